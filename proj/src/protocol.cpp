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

#include "locc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace locc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

using Point = std::vector<int>;

/// Rewrites a set of points of a product space as disjoint boxes.
std::vector<ElementaryTerm> boxes_from_points(const std::set<Point> &points, std::size_t wires) {
    if (points.empty()) {
        return {};
    }
    if (wires == 1) {
        ElementaryTerm term(1);
        for (const auto &p : points) {
            term[0].push_back(p[0]);
        }
        return {term};
    }
    // Group prefixes by the set of last-wire levels they carry, then box each prefix group.
    std::map<Point, std::vector<int>> tails;
    for (const auto &p : points) {
        tails[Point(p.begin(), p.end() - 1)].push_back(p.back());
    }
    std::map<std::vector<int>, std::set<Point>> by_tail;
    for (auto &[prefix, tail] : tails) {
        by_tail[tail].insert(prefix);
    }
    std::vector<ElementaryTerm> out;
    for (const auto &[tail, prefixes] : by_tail) {
        for (auto term : boxes_from_points(prefixes, wires - 1)) {
            term.push_back(tail);
            out.push_back(std::move(term));
        }
    }
    return out;
}

/// Calls f on every point of the product space with the given dims.
template <typename F>
void for_each_point(const std::vector<int> &dims, F &&f) {
    Point p(dims.size(), 0);
    while (true) {
        f(p);
        std::size_t k = dims.size();
        while (k > 0) {
            k--;
            if (++p[k] < dims[k]) {
                break;
            }
            p[k] = 0;
            if (k == 0) {
                return;
            }
        }
        if (dims.empty()) {
            return;
        }
    }
}

bool term_contains(const ElementaryTerm &term, const Point &p) {
    for (std::size_t k = 0; k < p.size(); k++) {
        if (std::find(term[k].begin(), term[k].end(), p[k]) == term[k].end()) {
            return false;
        }
    }
    return true;
}

std::string resource_holder_list(const Resource &r) {
    std::vector<std::string> parties;
    for (const auto &h : r.holders) {
        parties.push_back(h.party);
    }
    std::sort(parties.begin(), parties.end());
    std::string out;
    for (std::size_t k = 0; k < parties.size(); k++) {
        out += (k ? "," : "") + parties[k];
    }
    return out;
}

class Validator {
   public:
    ValidationReport report;

    void walk(const NodePtr &node, const SystemLayout &layout, const std::string &path) {
        if (!node) {
            issue(path, "missing-child", "null node");
            return;
        }
        std::visit(overloaded{
                       [&](const AttachStep &s) { on_attach(s, layout, path); },
                       [&](const MeasureStep &s) { on_measure(s, layout, path); },
                       [&](const CnotStep &s) { on_cnot(s, layout, path); },
                       [&](const TeleportStep &s) { on_teleport(s, layout, path); },
                       [&](const FinishStep &) {},
                   },
                   node->step);
    }

   private:
    void issue(const std::string &path, std::string kind, std::string message) {
        report.issues.push_back({path, std::move(kind), std::move(message)});
    }

    void on_attach(const AttachStep &s, const SystemLayout &layout, const std::string &path) {
        std::string here = path + "/attach:" + s.resource.key();
        const Resource &r = s.resource;
        std::size_t expected = r.kind == ResourceKind::kEpr ? 2 : r.kind == ResourceKind::kGhz3 ? 3 : 4;
        if (r.holders.size() != expected) {
            issue(here, "malformed-resource", "wrong number of holders for " + r.kind_name());
            return;
        }
        std::set<std::string> parties;
        SystemLayout next = layout;
        for (const auto &h : r.holders) {
            if (!parties.insert(h.party).second) {
                issue(here, "malformed-resource", "party '" + h.party + "' holds two shares");
                return;
            }
            if (!layout.find_party(h.party)) {
                issue(here, "unknown-party", "no party '" + h.party + "'");
                return;
            }
            if (h.wire.empty() || next.find_wire(h.wire)) {
                issue(here, "duplicate-wire", "ancilla wire '" + h.wire + "' is empty or already in use");
                return;
            }
            next = next.with_ancilla(h.party, WireDecl{h.wire, r.dim, true});
        }
        walk(s.next, next, here);
    }

    void on_measure(const MeasureStep &s, const SystemLayout &layout, const std::string &path) {
        const Measurement &m = s.measurement;
        std::string here = path + "/measure:" + m.party;
        bool wires_ok = true;
        auto party = layout.find_party(m.party);
        if (!party) {
            issue(here, "unknown-party", "no party '" + m.party + "'");
            wires_ok = false;
        }
        std::vector<int> dims;
        for (const auto &w : m.wires) {
            auto pos = layout.find_wire(w);
            if (!pos) {
                issue(here, "unattached-wire", "wire '" + w + "' is used before it exists");
                wires_ok = false;
                continue;
            }
            if (party && layout.owner(*pos) != *party) {
                issue(here, "locality", "wire '" + w + "' belongs to party '" +
                                            layout.parties()[layout.owner(*pos)].name + "', not '" + m.party + "'");
            }
            dims.push_back(layout.dim(*pos));
        }
        if (m.wires.empty() || m.outcomes.empty()) {
            issue(here, "malformed-measurement", "measurement has no wires or no outcomes");
            wires_ok = false;
        }
        std::set<std::string> labels;
        for (const auto &o : m.outcomes) {
            if (!labels.insert(o.label).second) {
                issue(here, "malformed-measurement", "duplicate outcome label " + o.label);
            }
            if (o.projector.wires != m.wires) {
                issue(here + "/" + o.label, "locality", "projector wires differ from the measured wires");
                wires_ok = false;
                continue;
            }
            for (const auto &term : o.projector.terms) {
                if (term.size() != m.wires.size()) {
                    issue(here + "/" + o.label, "malformed-measurement", "term does not cover every wire");
                    wires_ok = false;
                } else if (wires_ok) {
                    for (std::size_t k = 0; k < term.size(); k++) {
                        for (int l : term[k]) {
                            if (l < 0 || l >= dims[k]) {
                                issue(here + "/" + o.label, "malformed-measurement",
                                      "level " + std::to_string(l) + " out of range on wire '" + m.wires[k] + "'");
                                wires_ok = false;
                            }
                        }
                    }
                }
            }
        }
        if (wires_ok) {
            std::size_t missing = 0;
            std::size_t doubled = 0;
            for_each_point(dims, [&](const Point &p) {
                int hits = 0;
                for (const auto &o : m.outcomes) {
                    for (const auto &term : o.projector.terms) {
                        hits += term_contains(term, p) ? 1 : 0;
                    }
                }
                missing += hits == 0 ? 1 : 0;
                doubled += hits > 1 ? 1 : 0;
            });
            if (missing) {
                issue(here, "incomplete", std::to_string(missing) + " basis states are not covered by any outcome");
            }
            if (doubled) {
                issue(here, "overlap", std::to_string(doubled) + " basis states are covered more than once");
            }
        }
        if (s.children.size() != m.outcomes.size()) {
            issue(here, "missing-child", "children do not match outcomes");
        }
        for (std::size_t k = 0; k < std::min(s.children.size(), m.outcomes.size()); k++) {
            walk(s.children[k], layout, here + "/" + m.outcomes[k].label);
        }
    }

    void on_cnot(const CnotStep &s, const SystemLayout &layout, const std::string &path) {
        std::string here = path + "/CNOT(" + s.control + "->" + s.target + ")";
        auto c = layout.find_wire(s.control);
        auto t = layout.find_wire(s.target);
        if (!c || !t) {
            issue(here, "unattached-wire", "CNOT wire does not exist");
        } else if (*c == *t) {
            issue(here, "malformed-cnot", "control equals target");
        } else if (layout.dim(*c) != 2 || layout.dim(*t) != 2) {
            issue(here, "non-qubit-cnot", "CNOT wires must be qubits");
        }
        walk(s.next, layout, here);
    }

    void on_teleport(const TeleportStep &s, const SystemLayout &layout, const std::string &path) {
        std::string here = path + "/teleport(" + s.source + "->" + s.destination + ")";
        if (s.source == s.destination) {
            issue(here, "teleport-self", "source and destination coincide");
            return;
        }
        auto src = layout.find_party(s.source);
        auto dst = layout.find_party(s.destination);
        if (!src || !dst) {
            issue(here, "unknown-party", "teleport party does not exist");
            return;
        }
        const auto &party = layout.parties()[*src];
        if (party.wires.size() != 1) {
            issue(here, "malformed-teleport", "source party holds more than its main wire");
            return;
        }
        if (party.main_dim() != s.dim) {
            issue(here, "malformed-teleport", "source dimension differs from the consumed pair");
            return;
        }
        walk(s.next, layout.with_wire_moved(party.wires[0].name, s.destination), here);
    }
};

NodePtr make_node(Step step, std::string annotation) {
    return std::make_shared<const Node>(Node{std::move(step), std::move(annotation)});
}

}  // namespace

std::string Resource::kind_name() const {
    switch (kind) {
        case ResourceKind::kEpr:
            return "EPR(" + std::to_string(dim) + ")";
        case ResourceKind::kGhz3:
            return "GHZ3";
        case ResourceKind::kF4:
            return "F4";
    }
    return "?";
}

std::string Resource::key() const {
    return kind_name() + "@" + resource_holder_list(*this);
}

Resource epr(int d, ResourceHolder first, ResourceHolder second) {
    return Resource{ResourceKind::kEpr, d, {std::move(first), std::move(second)}};
}

Resource ghz3(ResourceHolder a, ResourceHolder b, ResourceHolder c) {
    return Resource{ResourceKind::kGhz3, 2, {std::move(a), std::move(b), std::move(c)}};
}

Resource f4(ResourceHolder a, ResourceHolder b, ResourceHolder c, ResourceHolder d) {
    return Resource{ResourceKind::kF4, 2, {std::move(a), std::move(b), std::move(c), std::move(d)}};
}

NodePtr attach(Resource r, NodePtr next, std::string annotation) {
    return make_node(AttachStep{std::move(r), std::move(next)}, std::move(annotation));
}

NodePtr measure(Measurement m, std::vector<NodePtr> children, std::string annotation) {
    return make_node(MeasureStep{std::move(m), std::move(children)}, std::move(annotation));
}

NodePtr cnot(std::string control, std::string target, NodePtr next, std::string annotation) {
    return make_node(CnotStep{std::move(control), std::move(target), std::move(next)}, std::move(annotation));
}

NodePtr teleport(std::string source, std::string destination, int dim, NodePtr next, std::string annotation) {
    return make_node(TeleportStep{std::move(source), std::move(destination), dim, std::move(next)},
                     std::move(annotation));
}

NodePtr finish(Verdict v, std::string annotation) {
    return make_node(FinishStep{std::move(v)}, std::move(annotation));
}

NodePtr identified(std::string label) {
    return finish(Identified{std::move(label)});
}

NodePtr terminal_pair(std::string first, std::string second) {
    return finish(TerminalPair{{std::move(first), std::move(second)}});
}

NodePtr terminal_subset(std::vector<std::string> families) {
    return finish(TerminalSubset{std::move(families)});
}

std::vector<int> levels(int lo, int hi) {
    std::vector<int> out;
    for (int l = lo; l <= hi; l++) {
        out.push_back(l);
    }
    return out;
}

Measurement make_measurement(std::string party, std::vector<WireSpec> wires,
                             std::vector<std::pair<std::string, std::vector<TermSpec>>> outcomes,
                             std::optional<std::string> complement_label) {
    std::vector<int> dims;
    std::vector<std::string> names;
    for (const auto &w : wires) {
        dims.push_back(w.dim);
        names.push_back(w.name);
    }
    auto to_term = [&](const TermSpec &spec) {
        ElementaryTerm term;
        for (const auto &w : wires) {
            auto it = spec.find(w.name);
            if (it == spec.end()) {
                term.push_back(levels(0, w.dim - 1));
            } else {
                std::vector<int> ls = it->second;
                for (int l : ls) {
                    if (l < 0 || l >= w.dim) {
                        throw StructuralError("measurement: level " + std::to_string(l) + " outside wire '" + w.name +
                                              "'");
                    }
                }
                std::sort(ls.begin(), ls.end());
                ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
                term.push_back(std::move(ls));
            }
        }
        for (const auto &[name, _] : spec) {
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                throw StructuralError("measurement: term names wire '" + name + "' outside the measured wires");
            }
        }
        return term;
    };

    Measurement m{std::move(party), names, {}};
    std::set<Point> covered;
    for (auto &[label, specs] : outcomes) {
        std::set<Point> points;
        std::vector<ElementaryTerm> terms;
        for (const auto &spec : specs) {
            terms.push_back(to_term(spec));
        }
        for_each_point(dims, [&](const Point &p) {
            for (const auto &t : terms) {
                if (term_contains(t, p)) {
                    points.insert(p);
                    break;
                }
            }
        });
        for (const auto &p : points) {
            if (!covered.insert(p).second) {
                throw StructuralError("measurement: outcome " + label + " overlaps an earlier outcome");
            }
        }
        m.outcomes.push_back({label, Projector{names, boxes_from_points(points, names.size())}});
    }
    if (complement_label) {
        std::set<Point> rest;
        for_each_point(dims, [&](const Point &p) {
            if (!covered.count(p)) {
                rest.insert(p);
            }
        });
        m.outcomes.push_back({*complement_label, Projector{names, boxes_from_points(rest, names.size())}});
    }
    return m;
}

NodePtr relabel_subtree(const NodePtr &node, const std::vector<WireShift> &shifts) {
    if (!node) {
        return node;
    }
    auto shifted = [&](const std::string &wire) {
        return std::any_of(shifts.begin(), shifts.end(), [&](const WireShift &s) { return s.wire == wire; });
    };
    return std::visit(
        overloaded{
            [&](const AttachStep &s) -> NodePtr {
                for (const auto &h : s.resource.holders) {
                    if (shifted(h.wire)) {
                        throw StructuralError("relabel: subtree re-attaches wire '" + h.wire + "'");
                    }
                }
                return attach(s.resource, relabel_subtree(s.next, shifts), node->annotation);
            },
            [&](const MeasureStep &s) -> NodePtr {
                Measurement m = s.measurement;
                for (auto &o : m.outcomes) {
                    for (std::size_t k = 0; k < o.projector.wires.size(); k++) {
                        for (const auto &sh : shifts) {
                            if (sh.wire != o.projector.wires[k]) {
                                continue;
                            }
                            for (auto &term : o.projector.terms) {
                                for (int &l : term[k]) {
                                    l = ((l + sh.shift) % sh.dim + sh.dim) % sh.dim;
                                }
                                std::sort(term[k].begin(), term[k].end());
                            }
                        }
                    }
                }
                std::vector<NodePtr> children;
                for (const auto &c : s.children) {
                    children.push_back(relabel_subtree(c, shifts));
                }
                return measure(std::move(m), std::move(children), node->annotation);
            },
            [&](const CnotStep &s) -> NodePtr {
                if (shifted(s.control) || shifted(s.target)) {
                    throw StructuralError("relabel: CNOT touches a shifted wire");
                }
                return cnot(s.control, s.target, relabel_subtree(s.next, shifts), node->annotation);
            },
            [&](const TeleportStep &s) -> NodePtr {
                if (shifted(s.source)) {
                    throw StructuralError("relabel: teleport moves a shifted wire");
                }
                return teleport(s.source, s.destination, s.dim, relabel_subtree(s.next, shifts), node->annotation);
            },
            [&](const FinishStep &) -> NodePtr { return node; },
        },
        node->step);
}

ValidationReport validate(const ProtocolTree &p) {
    Validator v;
    v.walk(p.root, p.layout, "root");
    return std::move(v.report);
}

double ebits(const Resource &r, const EbitValuation &valuation) {
    switch (r.kind) {
        case ResourceKind::kEpr:
            return std::log2(static_cast<double>(r.dim));
        case ResourceKind::kGhz3:
            return valuation.ghz3;
        case ResourceKind::kF4:
            return valuation.f4;
    }
    return 0.0;
}

SparseState build_resource_state(const Resource &r) {
    std::vector<PartyDecl> parties;
    for (const auto &h : r.holders) {
        parties.push_back(PartyDecl{h.party, {WireDecl{h.wire, r.dim, true}}});
    }
    SystemLayout layout(std::move(parties));
    std::vector<std::pair<BasisIndex, Amplitude>> terms;
    for (int l = 0; l < r.dim; l++) {
        terms.emplace_back(BasisIndex(r.holders.size(), l), 1.0);
    }
    return normalize(SparseState::from_terms(layout, terms));
}

SparseState apply_teleport(const SparseState &s, const std::string &source, const std::string &destination, int dim) {
    const auto &layout = s.layout();
    const auto &party = layout.parties()[layout.party_position(source)];
    if (party.main_dim() != dim) {
        throw StructuralError("teleport: '" + source + "' has dimension " + std::to_string(party.main_dim()) +
                              ", pair has " + std::to_string(dim));
    }
    return relayout(s, layout.with_wire_moved(party.wires[0].name, destination));
}

void CostTally::add(const Resource &r, double copies, const EbitValuation &valuation) {
    auto &entry = entries[r.key()];
    entry.kind = r.kind_name();
    entry.ebits_per_copy = locc::ebits(r, valuation);
    entry.copies += copies;
    ebits += copies * entry.ebits_per_copy;
}

void CostTally::add(const CostTally &other, double weight) {
    for (const auto &[key, e] : other.entries) {
        auto &entry = entries[key];
        entry.kind = e.kind;
        entry.ebits_per_copy = e.ebits_per_copy;
        entry.copies += weight * e.copies;
    }
    ebits += weight * other.ebits;
}

double CostTally::copies(const std::string &key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0.0 : it->second.copies;
}

std::string step_marker(const Node &node) {
    return std::visit(overloaded{
                          [](const AttachStep &s) { return "attach:" + s.resource.key(); },
                          [](const MeasureStep &s) { return "measure:" + s.measurement.party; },
                          [](const CnotStep &s) { return "CNOT(" + s.control + "->" + s.target + ")"; },
                          [](const TeleportStep &s) { return "teleport(" + s.source + "->" + s.destination + ")"; },
                          [](const FinishStep &) { return std::string("finish"); },
                      },
                      node.step);
}

}  // namespace locc
