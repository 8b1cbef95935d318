// Copyright 2026 The locc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCC_PROTOCOL_HPP
#define LOCC_PROTOCOL_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locc/qstate.hpp"

namespace locc {

enum class ResourceKind { kEpr, kGhz3, kF4 };

struct ResourceHolder {
    std::string party;
    /// Name of the ancilla wire the party receives. Empty for the implicit pair a teleport consumes.
    std::string wire;
};

struct Resource {
    ResourceKind kind = ResourceKind::kEpr;
    int dim = 2;
    std::vector<ResourceHolder> holders;

    /// Kind and dimension, e.g. "EPR(3)", "GHZ3", "F4".
    std::string kind_name() const;
    /// Kind plus holder parties in sorted order, e.g. "EPR(2)@A,C".
    std::string key() const;
};

Resource epr(int d, ResourceHolder first, ResourceHolder second);
Resource ghz3(ResourceHolder a, ResourceHolder b, ResourceHolder c);
Resource f4(ResourceHolder a, ResourceHolder b, ResourceHolder c, ResourceHolder d);

struct MeasurementOutcome {
    std::string label;
    Projector projector;
};

/// Projective measurement by one party on some of its wires; every outcome addresses the same wires.
struct Measurement {
    std::string party;
    std::vector<std::string> wires;
    std::vector<MeasurementOutcome> outcomes;
};

struct Identified {
    std::string label;
};
struct TerminalPair {
    std::array<std::string, 2> labels;
    std::string justification = "two-orthogonal-states";
};
struct TerminalSubset {
    std::vector<std::string> families;
    std::string finisher = "product-measurement";
};
using Verdict = std::variant<Identified, TerminalPair, TerminalSubset>;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct AttachStep {
    Resource resource;
    NodePtr next;
};
struct MeasureStep {
    Measurement measurement;
    /// Aligned with measurement.outcomes.
    std::vector<NodePtr> children;
};
struct CnotStep {
    std::string control;
    std::string target;
    NodePtr next;
};
struct TeleportStep {
    std::string source;
    std::string destination;
    int dim = 2;
    NodePtr next;
};
struct FinishStep {
    Verdict verdict;
};
using Step = std::variant<AttachStep, MeasureStep, CnotStep, TeleportStep, FinishStep>;

struct Node {
    Step step;
    std::string annotation;
};

struct CnotSpec {
    std::string control;
    std::string target;
};

struct ProtocolTree {
    std::string name;
    SystemLayout layout;
    NodePtr root;
    /// Gates that undo the protocol's CNOTs, applied in order.
    std::vector<CnotSpec> recovery;
    std::vector<std::string> notes;
};

NodePtr attach(Resource r, NodePtr next, std::string annotation = {});
NodePtr measure(Measurement m, std::vector<NodePtr> children, std::string annotation = {});
NodePtr cnot(std::string control, std::string target, NodePtr next, std::string annotation = {});
NodePtr teleport(std::string source, std::string destination, int dim, NodePtr next, std::string annotation = {});
NodePtr finish(Verdict v, std::string annotation = {});
NodePtr identified(std::string label);
NodePtr terminal_pair(std::string first, std::string second);
NodePtr terminal_subset(std::vector<std::string> families);

/// Level restriction of one projector term; wires not named are unrestricted.
using TermSpec = std::map<std::string, std::vector<int>>;

/// Wire name and dimension, as seen by the measuring party.
struct WireSpec {
    std::string name;
    int dim = 2;
};

/// Builds a measurement from explicit outcomes, each a union of (possibly overlapping) boxes, plus an
/// optional final outcome covering whatever the others miss. Terms are rewritten into disjoint boxes.
Measurement make_measurement(std::string party, std::vector<WireSpec> wires,
                             std::vector<std::pair<std::string, std::vector<TermSpec>>> outcomes,
                             std::optional<std::string> complement_label = std::nullopt);

/// Levels [lo, hi] inclusive.
std::vector<int> levels(int lo, int hi);

/// Cyclic level shift applied to wires of a subtree, used to generate mirrored outcome branches.
struct WireShift {
    std::string wire;
    int dim = 2;
    int shift = 1;
};

/// Copy of a subtree with every projector's levels on the given wires shifted cyclically. Refuses
/// (StructuralError) if a CNOT, teleport or resource attachment touches one of those wires.
NodePtr relabel_subtree(const NodePtr &node, const std::vector<WireShift> &shifts);

struct ValidationIssue {
    std::string path;
    std::string kind;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const {
        return issues.empty();
    }
};

ValidationReport validate(const ProtocolTree &p);

struct EbitValuation {
    double ghz3 = 1.0;
    double f4 = 1.0;
};

double ebits(const Resource &r, const EbitValuation &valuation = {});

/// Normalized resource state on a layout of the holder parties, one ancilla wire each.
SparseState build_resource_state(const Resource &r);
SparseState apply_teleport(const SparseState &s, const std::string &source, const std::string &destination, int dim);

struct CostEntry {
    std::string kind;
    double copies = 0.0;
    double ebits_per_copy = 0.0;
};

struct CostTally {
    /// Keyed by Resource::key().
    std::map<std::string, CostEntry> entries;
    double ebits = 0.0;

    void add(const Resource &r, double copies, const EbitValuation &valuation = {});
    void add(const CostTally &other, double weight);
    double copies(const std::string &key) const;
};

/// Position-stable description of a node within the tree, e.g. "root/M_{1,1}/CNOT(C->A)".
std::string step_marker(const Node &node);

}  // namespace locc

#endif
