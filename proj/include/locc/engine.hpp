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

#ifndef LOCC_ENGINE_HPP
#define LOCC_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"

namespace locc {

struct TranscriptEntry {
    std::string annotation;
    /// Outcome label, or a gate / teleport / attach marker.
    std::string event;

    bool operator==(const TranscriptEntry &) const = default;
};
using Transcript = std::vector<TranscriptEntry>;

struct PathRecord {
    std::string path;
    Transcript transcript;
    double probability = 0.0;
    std::string verdict;
    bool leaf_ok = false;
    CostTally cost;
};

struct MemberReport {
    std::string label;
    double prior = 0.0;
    std::vector<PathRecord> paths;
    double total_probability = 0.0;
    bool success = false;
};

struct LeafReport {
    std::string path;
    std::string verdict;
    std::vector<std::string> candidates;
    bool ok = false;
    std::string detail;
};

struct Failure {
    std::string path;
    std::string kind;
    std::string message;
    std::vector<std::string> candidates;
};

struct OrthogonalityViolation {
    std::string path;
    std::string first;
    std::string second;
    double overlap = 0.0;
};

struct OrthogonalityLog {
    std::size_t outcomes_checked = 0;
    std::size_t pairs_checked = 0;
    double max_overlap = 0.0;
    std::vector<OrthogonalityViolation> violations;
};

struct RunReport {
    std::string protocol;
    std::string ensemble;
    std::vector<MemberReport> members;
    std::vector<LeafReport> leaves;
    std::vector<Failure> failures;
    OrthogonalityLog orthogonality;
    CostTally expected;
    bool success = false;
    std::vector<std::string> notes;

    std::size_t identified_count() const;
};

struct RunOptions {
    /// Per-member weights in ensemble order; empty means uniform.
    std::vector<double> prior;
    EbitValuation valuation;
    double orthogonality_tol = 1e-10;
    double branch_cutoff = 1e-13;
    /// 0 picks LOCC_LAB_THREADS, else the hardware concurrency.
    unsigned threads = 0;
};

RunReport run(const ProtocolTree &p, const Ensemble &e, const RunOptions &options = {});
OrthogonalityLog check_orthogonality_preservation(const ProtocolTree &p, const Ensemble &e, double tol);
CostTally expected_cost(const RunReport &report);

/// Adaptive sequence of local projective measurements separating product states.
struct PlanNode {
    /// Member positions (within the finisher input) still possible here.
    std::vector<std::size_t> members;
    /// Empty at leaves.
    std::string party;
    /// Orthonormal bases of the outcome subspaces on the party's local space, one per child;
    /// any remaining outcome (the complement) is never reached by these members.
    std::vector<Eigen::MatrixXcd> subspaces;
    std::vector<PlanNode> children;
};

struct FinisherResult {
    bool accepted = false;
    PlanNode plan;
    std::string refusal;
    std::optional<std::pair<std::string, std::string>> offending;
};

FinisherResult product_finisher(const std::vector<LabeledState> &subset, double tol = 1e-10);

/// Runs the plan on each member: index of the plan leaf it reaches with certainty, or nullopt.
std::vector<std::optional<std::size_t>> simulate_plan(const FinisherResult &result,
                                                      const std::vector<LabeledState> &subset, double tol = 1e-10);

/// Outcome of measuring every ancilla wire in its Fourier basis; one level per ancilla in layout order.
std::vector<LabeledState> release_ancillas(const std::vector<LabeledState> &states, const std::vector<int> &outcome,
                                           double tol = 1e-12);

struct RecoveryReport {
    bool ok = false;
    std::size_t checked = 0;
    double min_fidelity = 1.0;
    std::vector<std::string> failures;
};

/// Applies the tree's recovery gates at every leaf, releases the ancillas on their uniform Fourier
/// outcome and compares with the original member.
RecoveryReport verify_recovery(const ProtocolTree &p, const Ensemble &e, double tol = 1e-10);

unsigned default_thread_count();

}  // namespace locc

#endif
