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

#include "locc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace locc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

struct OutcomeVisit {
    std::string path;
    SparseState state;
};

struct LeafVisit {
    std::string path;
    Transcript transcript;
    double probability = 0.0;
    SparseState state;
    CostTally cost;
    const FinishStep *finish = nullptr;
};

struct MemberTrace {
    std::vector<OutcomeVisit> outcomes;
    std::vector<LeafVisit> leaves;
};

/// Depth-first walk of one member through the tree.
class Walker {
   public:
    Walker(const RunOptions &options, bool keep_outcomes) : options_(options), keep_outcomes_(keep_outcomes) {
    }

    MemberTrace trace;

    void go(const NodePtr &node, const SparseState &state, double probability, const std::string &path,
            Transcript &transcript, CostTally &cost) {
        std::visit(overloaded{
                       [&](const AttachStep &s) {
                           SparseState next = extend(state, build_resource_state(s.resource));
                           CostTally c = cost;
                           c.add(s.resource, 1.0, options_.valuation);
                           transcript.push_back({node->annotation, "attach " + s.resource.key()});
                           go(s.next, next, probability, path + "/attach:" + s.resource.key(), transcript, c);
                           transcript.pop_back();
                       },
                       [&](const MeasureStep &s) {
                           const auto &m = s.measurement;
                           std::string here = path + "/measure:" + m.party;
                           for (std::size_t k = 0; k < m.outcomes.size(); k++) {
                               auto result = apply_projector(m.outcomes[k].projector, state);
                               if (result.probability < options_.branch_cutoff) {
                                   continue;
                               }
                               SparseState post = normalize(result.state);
                               std::string child = here + "/" + m.outcomes[k].label;
                               if (keep_outcomes_) {
                                   trace.outcomes.push_back({child, post});
                               }
                               transcript.push_back({node->annotation, m.outcomes[k].label});
                               go(s.children[k], post, probability * result.probability, child, transcript, cost);
                               transcript.pop_back();
                           }
                       },
                       [&](const CnotStep &s) {
                           std::string marker = "CNOT(" + s.control + "->" + s.target + ")";
                           transcript.push_back({node->annotation, marker});
                           go(s.next, apply_cnot(state, s.control, s.target), probability, path + "/" + marker,
                              transcript, cost);
                           transcript.pop_back();
                       },
                       [&](const TeleportStep &s) {
                           std::string marker = "teleport(" + s.source + "->" + s.destination + ")";
                           CostTally c = cost;
                           c.add(epr(s.dim, {s.source, ""}, {s.destination, ""}), 1.0, options_.valuation);
                           transcript.push_back({node->annotation, marker});
                           go(s.next, apply_teleport(state, s.source, s.destination, s.dim), probability,
                              path + "/" + marker, transcript, c);
                           transcript.pop_back();
                       },
                       [&](const FinishStep &s) {
                           trace.leaves.push_back({path, transcript, probability, state, cost, &s});
                       },
                   },
                   node->step);
    }

   private:
    const RunOptions &options_;
    bool keep_outcomes_;
};

std::vector<MemberTrace> trace_all(const ProtocolTree &p, const Ensemble &e, const RunOptions &options,
                                   bool keep_outcomes) {
    std::vector<MemberTrace> traces(e.members.size());
    unsigned threads = options.threads ? options.threads : default_thread_count();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(e.members.size())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            std::size_t k = next++;
            if (k >= e.members.size()) {
                return;
            }
            try {
                Walker w(options, keep_outcomes);
                Transcript transcript;
                CostTally cost;
                w.go(p.root, e.members[k].state, 1.0, "root", transcript, cost);
                traces[k] = std::move(w.trace);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return traces;
}

std::string verdict_text(const Verdict &v) {
    return std::visit(overloaded{
                          [](const Identified &x) { return "identified " + x.label; },
                          [](const TerminalPair &x) { return "pair {" + x.labels[0] + ", " + x.labels[1] + "}"; },
                          [](const TerminalSubset &x) {
                              std::string out = "subset {";
                              for (std::size_t k = 0; k < x.families.size(); k++) {
                                  out += (k ? ", " : "") + x.families[k];
                              }
                              return out + "}";
                          },
                      },
                      v);
}

/// All outcome vectors over the given dims.
std::vector<std::vector<int>> outcome_grid(const std::vector<int> &dims) {
    std::vector<std::vector<int>> out{{}};
    for (int d : dims) {
        std::vector<std::vector<int>> next;
        for (const auto &prefix : out) {
            for (int t = 0; t < d; t++) {
                auto v = prefix;
                v.push_back(t);
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Checks a subset leaf: ancillas released in every Fourier outcome, then the product finisher.
std::string check_subset_leaf(const std::vector<LabeledState> &states) {
    if (states.size() < 2) {
        return {};
    }
    const auto &layout = states.front().state.layout();
    std::vector<int> dims;
    for (std::size_t w = 0; w < layout.wire_count(); w++) {
        if (layout.wire(w).ancilla) {
            dims.push_back(layout.dim(w));
        }
    }
    for (const auto &t : outcome_grid(dims)) {
        auto released = release_ancillas(states, t);
        if (released.size() < 2) {
            continue;
        }
        auto result = product_finisher(released);
        std::string where;
        for (int x : t) {
            where += std::to_string(x);
        }
        if (!result.accepted) {
            return "finisher refused after ancilla outcome " + where + ": " + result.refusal;
        }
        auto landing = simulate_plan(result, released);
        std::set<std::size_t> seen;
        for (std::size_t k = 0; k < landing.size(); k++) {
            if (!landing[k] || !seen.insert(*landing[k]).second) {
                return "finisher plan does not isolate " + released[k].label.str() + " after ancilla outcome " + where;
            }
        }
    }
    return {};
}

std::string family_of(const std::string &label) {
    return label.substr(0, label.find('('));
}

}  // namespace

unsigned default_thread_count() {
    if (const char *env = std::getenv("LOCC_LAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t RunReport::identified_count() const {
    return static_cast<std::size_t>(
        std::count_if(members.begin(), members.end(), [](const MemberReport &m) { return m.success; }));
}

RunReport run(const ProtocolTree &p, const Ensemble &e, const RunOptions &options) {
    RunReport report;
    report.protocol = p.name;
    report.ensemble = e.name;
    report.notes = p.notes;
    if (!(p.layout == e.layout)) {
        throw StructuralError("run: ensemble layout does not match the protocol layout");
    }
    auto validation = validate(p);
    if (!validation.ok()) {
        for (const auto &issue : validation.issues) {
            report.failures.push_back({issue.path, "invalid-tree:" + issue.kind, issue.message, {}});
        }
        return report;
    }
    std::vector<double> prior = options.prior;
    if (prior.empty()) {
        prior.assign(e.members.size(), 1.0 / static_cast<double>(e.members.size()));
    }
    if (prior.size() != e.members.size()) {
        throw DomainError("run: prior has the wrong number of weights");
    }
    double mass = 0.0;
    for (double w : prior) {
        if (!(w >= 0.0)) {
            throw DomainError("run: prior weights must be nonnegative");
        }
        mass += w;
    }
    if (mass <= 0.0) {
        throw DomainError("run: prior has zero mass");
    }
    for (double &w : prior) {
        w /= mass;
    }

    auto traces = trace_all(p, e, options, true);

    // Orthogonality of the surviving candidates after every outcome.
    std::map<std::string, std::vector<std::pair<std::size_t, const SparseState *>>> by_outcome;
    for (std::size_t m = 0; m < traces.size(); m++) {
        for (const auto &v : traces[m].outcomes) {
            by_outcome[v.path].emplace_back(m, &v.state);
        }
    }
    for (const auto &[path, group] : by_outcome) {
        report.orthogonality.outcomes_checked++;
        for (std::size_t x = 0; x < group.size(); x++) {
            for (std::size_t y = x + 1; y < group.size(); y++) {
                double overlap = std::abs(inner_product(*group[x].second, *group[y].second));
                report.orthogonality.pairs_checked++;
                report.orthogonality.max_overlap = std::max(report.orthogonality.max_overlap, overlap);
                if (overlap >= options.orthogonality_tol) {
                    report.orthogonality.violations.push_back(
                        {path, e.members[group[x].first].label.str(), e.members[group[y].first].label.str(), overlap});
                }
            }
        }
    }

    // Leaves: who arrives, and whether the verdict covers them.
    std::map<std::string, std::vector<std::pair<std::size_t, const LeafVisit *>>> by_leaf;
    for (std::size_t m = 0; m < traces.size(); m++) {
        for (const auto &v : traces[m].leaves) {
            by_leaf[v.path].emplace_back(m, &v);
        }
    }
    std::map<std::string, bool> leaf_ok;
    for (const auto &[path, group] : by_leaf) {
        const Verdict &verdict = group.front().second->finish->verdict;
        LeafReport leaf{path, verdict_text(verdict), {}, true, {}};
        std::vector<LabeledState> states;
        for (const auto &[m, v] : group) {
            leaf.candidates.push_back(e.members[m].label.str());
            states.push_back({e.members[m].label, v->state});
        }
        auto fail = [&](std::string kind, std::string message) {
            leaf.ok = false;
            leaf.detail = message;
            report.failures.push_back({path, std::move(kind), std::move(message), leaf.candidates});
        };
        std::visit(overloaded{
                       [&](const Identified &x) {
                           if (leaf.candidates.size() > 1) {
                               fail("ambiguous-leaf", "several candidates reach a single-label verdict");
                           } else if (leaf.candidates.front() != x.label) {
                               fail("unsound-verdict", "leaf names " + x.label);
                           }
                       },
                       [&](const TerminalPair &x) {
                           std::set<std::string> want(x.labels.begin(), x.labels.end());
                           std::set<std::string> got(leaf.candidates.begin(), leaf.candidates.end());
                           if (got != want || got.size() != 2) {
                               fail(got.size() > 2 ? "ambiguous-leaf" : "unsound-verdict",
                                    "pair leaf must be reached by exactly its two labels");
                               return;
                           }
                           double overlap = std::abs(inner_product(states[0].state, states[1].state));
                           if (overlap >= options.orthogonality_tol) {
                               fail("pair-not-orthogonal", "pair overlap " + std::to_string(overlap));
                           }
                       },
                       [&](const TerminalSubset &x) {
                           for (const auto &c : leaf.candidates) {
                               if (std::find(x.families.begin(), x.families.end(), family_of(c)) == x.families.end()) {
                                   fail(leaf.candidates.size() > 1 ? "ambiguous-leaf" : "unsound-verdict",
                                        c + " is outside the leaf's families");
                                   return;
                               }
                           }
                           std::string problem = check_subset_leaf(states);
                           if (!problem.empty()) {
                               fail("finisher-refused", problem);
                           }
                       },
                   },
                   verdict);
        leaf_ok[path] = leaf.ok;
        report.leaves.push_back(std::move(leaf));
    }

    bool all = true;
    for (std::size_t m = 0; m < traces.size(); m++) {
        MemberReport member{e.members[m].label.str(), prior[m], {}, 0.0, true};
        for (const auto &v : traces[m].leaves) {
            bool ok = leaf_ok[v.path];
            member.paths.push_back({v.path, v.transcript, v.probability, verdict_text(v.finish->verdict), ok, v.cost});
            member.total_probability += v.probability;
            member.success = member.success && ok;
            report.expected.add(v.cost, prior[m] * v.probability);
        }
        if (std::abs(member.total_probability - 1.0) > 1e-10) {
            member.success = false;
            report.failures.push_back({"", "probability-leak",
                                       member.label + " reaches leaves with total probability " +
                                           std::to_string(member.total_probability),
                                       {member.label}});
        }
        all = all && member.success;
        report.members.push_back(std::move(member));
    }
    for (const auto &[key, entry] : report.expected.entries) {
        if (entry.kind == "GHZ3" || entry.kind == "F4") {
            report.notes.push_back("multipartite resources are counted by copies; their ebit value (" +
                                   std::to_string(entry.ebits_per_copy).substr(0, 4) +
                                   " per copy) is a modeling choice");
            break;
        }
    }
    report.success = all && report.failures.empty() && report.orthogonality.violations.empty();
    return report;
}

OrthogonalityLog check_orthogonality_preservation(const ProtocolTree &p, const Ensemble &e, double tol) {
    RunOptions options;
    options.orthogonality_tol = tol;
    return run(p, e, options).orthogonality;
}

CostTally expected_cost(const RunReport &report) {
    CostTally total;
    for (const auto &m : report.members) {
        for (const auto &path : m.paths) {
            total.add(path.cost, m.prior * path.probability);
        }
    }
    return total;
}

std::vector<LabeledState> release_ancillas(const std::vector<LabeledState> &states, const std::vector<int> &outcome,
                                           double tol) {
    std::vector<LabeledState> out;
    for (const auto &s : states) {
        SparseState state = s.state;
        std::size_t k = 0;
        for (std::size_t w = 0; w < s.state.layout().wire_count(); w++) {
            const auto &wire = s.state.layout().wire(w);
            if (!wire.ancilla) {
                continue;
            }
            if (k >= outcome.size()) {
                throw StructuralError("release_ancillas: outcome vector too short");
            }
            LocalVector bra = local_fourier_vector(FourierKind::kAlpha, wire.dim, outcome[k++]);
            state = contract_wire(state, wire.name, bra / std::sqrt(static_cast<double>(wire.dim)));
        }
        if (norm(state) > tol) {
            out.push_back({s.label, normalize(state)});
        }
    }
    return out;
}

RecoveryReport verify_recovery(const ProtocolTree &p, const Ensemble &e, double tol) {
    RecoveryReport report;
    RunOptions options;
    auto traces = trace_all(p, e, options, false);
    for (std::size_t m = 0; m < traces.size(); m++) {
        const auto &original = e.members[m].state;
        for (const auto &leaf : traces[m].leaves) {
            SparseState s = leaf.state;
            for (const auto &g : p.recovery) {
                s = apply_cnot(s, g.control, g.target);
            }
            std::vector<int> zeros;
            for (std::size_t w = 0; w < s.layout().wire_count(); w++) {
                zeros.push_back(0);
            }
            auto released = release_ancillas({{e.members[m].label, s}}, zeros);
            double fidelity = 0.0;
            if (!released.empty()) {
                SparseState back = relayout(released.front().state, original.layout());
                fidelity = std::norm(inner_product(original, back));
            }
            report.checked++;
            report.min_fidelity = std::min(report.min_fidelity, fidelity);
            if (fidelity < 1.0 - tol) {
                report.failures.push_back(e.members[m].label.str() + " at " + leaf.path);
            }
        }
    }
    report.ok = report.failures.empty() && report.checked > 0;
    return report;
}

}  // namespace locc
