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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "locc/catalog.hpp"
#include "locc/engine.hpp"
#include "tree_walk.hpp"

using namespace locc;

namespace {

using Dims = std::vector<int>;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &why) {
        if (!ok) {
            pass = false;
            detail << " [" << why << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string dims_text(const Dims &d) {
    std::string s;
    for (std::size_t k = 0; k < d.size(); k++) {
        s += (k ? "," : "") + std::to_string(d[k]);
    }
    return s;
}

struct TimedRun {
    RunReport report;
    double seconds = 0.0;
};

TimedRun timed_run(int id, const Dims &d) {
    auto t0 = std::chrono::steady_clock::now();
    auto p = build(id, d);
    auto e = theorem_ensemble(id, d);
    TimedRun out{run(p, e), 0.0};
    out.seconds = seconds_since(t0);
    return out;
}

// Every member reaches a sound leaf on every branch, and its branch probabilities add to one.
void require_discrimination(Outcome &o, const RunReport &r, const std::string &tag) {
    o.require(r.success, tag + ": run failed" + (r.failures.empty() ? "" : " (" + r.failures.front().kind + ")"));
    o.require(r.identified_count() == r.members.size(), tag + ": not every member identified");
    for (const auto &m : r.members) {
        if (std::abs(m.total_probability - 1.0) > 1e-10) {
            o.require(false, tag + ": probability leak for " + m.label);
            break;
        }
    }
}

void require_close(Outcome &o, double got, double want, double tol, const std::string &tag) {
    if (std::abs(got - want) > tol) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%s: simulated %.12g, expected %.12g, delta %.3g", tag.c_str(), got, want,
                      got - want);
        o.require(false, buf);
    }
}

// Independent counting loops over the published index ranges.
int count_asym4(const Dims &d) {
    int n = 0;
    auto a = [&](int k) { return d[k]; };
    auto b = [&](int k) { return d[k] - 1; };
    auto k2 = [&](int k) { return d[k] - 2; };
    // Two-index families: H1 H3 H5 H7 H9 H10 H11 H12 H13 H14 H15 H16.
    const std::vector<std::pair<std::function<int()>, std::function<int()>>> two = {
        {[&] { return a(3); }, [&] { return b(2); }},  {[&] { return a(1); }, [&] { return b(0); }},
        {[&] { return a(3); }, [&] { return b(2); }},  {[&] { return a(1); }, [&] { return b(0); }},
        {[&] { return k2(1); }, [&] { return b(3); }}, {[&] { return k2(1); }, [&] { return b(3); }},
        {[&] { return k2(0); }, [&] { return b(2); }}, {[&] { return k2(0); }, [&] { return b(2); }},
        {[&] { return k2(2); }, [&] { return b(1); }}, {[&] { return k2(2); }, [&] { return b(1); }},
        {[&] { return k2(0); }, [&] { return b(3); }}, {[&] { return k2(0); }, [&] { return b(3); }},
    };
    for (const auto &[x, y] : two) {
        for (int i = 0; i < x(); i++) {
            for (int j = 0; j < y(); j++) {
                n++;
            }
        }
    }
    // One-index families: H2 (d4), H4 (d2), H6 (d4), H8 (d2).
    for (int k : {3, 1, 3, 1}) {
        for (int j = 0; j < b(k); j++) {
            n++;
        }
    }
    // H17, H18: kappa on party 4, two signs.
    for (int f = 0; f < 2; f++) {
        for (int sign = 0; sign < 2; sign++) {
            for (int I = 0; I < k2(3); I++) {
                n++;
            }
        }
    }
    return n;
}

int count_sym4(const Dims &d) {
    int n = 0;
    // H_{1,x}: gamma on party g, kappa on two parties.
    const int h1[4][3] = {{3, 0, 1}, {2, 0, 3}, {1, 2, 3}, {0, 1, 2}};
    for (const auto &f : h1) {
        for (int m = 0; m < d[f[0]] - 1; m++) {
            for (int I = 0; I < d[f[1]] - 2; I++) {
                for (int J = 0; J < d[f[2]] - 2; J++) {
                    n++;
                }
            }
        }
    }
    // H_{2,x} (beta) and H_{3,x} (gamma): one index.
    for (int k : {3, 2, 1, 0, 3, 2, 1, 0}) {
        for (int j = 0; j < d[k] - 1; j++) {
            n++;
        }
    }
    // H_{4,x}: kappa plus a sign.
    for (int k : {0, 3, 2, 1}) {
        for (int sign = 0; sign < 2; sign++) {
            for (int I = 0; I < d[k] - 2; I++) {
                n++;
            }
        }
    }
    // H_{5,x}: kappa and beta.
    const int h5[4][2] = {{2, 3}, {1, 2}, {0, 1}, {3, 0}};
    for (const auto &f : h5) {
        for (int I = 0; I < d[f[0]] - 2; I++) {
            for (int j = 0; j < d[f[1]] - 1; j++) {
                n++;
            }
        }
    }
    n += 4;  // H_{6,x}
    // H_{7,x}, H_{8,x}: two kappas.
    const int h78[6][2] = {{1, 3}, {0, 2}, {1, 3}, {0, 2}, {1, 3}, {0, 2}};
    for (const auto &f : h78) {
        for (int I = 0; I < d[f[0]] - 2; I++) {
            for (int J = 0; J < d[f[1]] - 2; J++) {
                n++;
            }
        }
    }
    return n;
}

int count_sym5(const Dims &d) {
    int n = 0;
    const int alpha[5][3] = {{0, 1, 2}, {0, 4, 1}, {3, 4, 0}, {2, 3, 4}, {1, 2, 3}};
    for (const auto &f : alpha) {
        for (int i = 0; i < std::min(d[f[0]], d[f[1]]); i++) {
            for (int p = 1; p < d[f[2]]; p++) {
                n++;
            }
        }
    }
    const int gamma[5][2] = {{0, 2}, {4, 1}, {3, 0}, {2, 4}, {1, 3}};
    for (const auto &f : gamma) {
        for (int m = 0; m < d[f[0]] - 1; m++) {
            for (int p = 1; p < d[f[1]]; p++) {
                n++;
            }
        }
    }
    return n;
}

// Exact integer closed forms, evaluated here rather than through the catalog.
std::int64_t pair_sum(const Dims &d) {
    std::int64_t p = 0;
    for (std::size_t x = 0; x < d.size(); x++) {
        for (std::size_t y = x + 1; y < d.size(); y++) {
            p += static_cast<std::int64_t>(d[x]) * d[y];
        }
    }
    return p;
}

std::pair<std::int64_t, std::int64_t> thm5_rs(const Dims &d) {
    std::int64_t p = pair_sum(d), s = d[0] + d[1] + d[2] + d[3];
    return {p - 4 * s + d[0] * (d[2] + d[3]) + d[1] - d[2] + 6, 2 * (p - 2 * s - d[1] - d[2] + 2)};
}

std::pair<std::int64_t, std::int64_t> thm7_rs(const Dims &d) {
    std::int64_t p = pair_sum(d), s = d[0] + d[1] + d[2] + d[3];
    std::int64_t den = -2 * p + 3 * s + d[0] * d[2] * (1 + d[1] + d[3]) + d[1] * d[3] * (1 + d[0] + d[2]) - 4;
    return {den - (d[0] + d[1] + d[2]) + 3, den};
}

bool has_kind(const ValidationReport &r, const std::string &kind) {
    for (const auto &i : r.issues) {
        if (i.kind == kind) {
            return true;
        }
    }
    return false;
}

Measurement level_measurement(const std::string &party, const std::vector<std::string> &wires, int dim) {
    Measurement m{party, wires, {}};
    for (int l = 0; l < dim; l++) {
        ElementaryTerm term(wires.size(), levels(0, dim - 1));
        term[0] = {l};
        m.outcomes.push_back({"M_" + std::to_string(l), Projector{wires, {term}}});
    }
    return m;
}

std::vector<NodePtr> leaves(std::size_t n) {
    std::vector<NodePtr> out;
    for (std::size_t k = 0; k < n; k++) {
        out.push_back(identified("x"));
    }
    return out;
}

}  // namespace

int main() {
    const Dims q4{2, 2, 2, 2}, q5{2, 2, 2, 2, 2}, m4{3, 3, 3, 3}, u4{3, 4, 5, 6}, m5{3, 3, 3, 3, 3};
    const Dims u5{3, 4, 3, 4, 3}, d4433{4, 4, 3, 3};
    std::vector<Outcome> results(12);

    // 1, 2: GHZ bases with one pair.
    {
        Outcome &o = results[1];
        auto t = timed_run(1, q4);
        require_discrimination(o, t.report, "thm1");
        o.require(t.report.members.size() == 16, "thm1: expected 16 members");
        require_close(o, t.report.expected.copies("EPR(2)@A,B"), 1.0, 1e-9, "thm1 EPR(2) copies");
        require_close(o, t.report.expected.ebits, 1.0, 1e-9, "thm1 ebits");
        o.require(t.seconds < 1.0, "thm1 took " + std::to_string(t.seconds) + " s");
        o.detail << " 16 states, " << t.report.expected.ebits << " ebit, " << t.seconds << " s";
    }
    {
        Outcome &o = results[2];
        auto t = timed_run(2, q5);
        require_discrimination(o, t.report, "thm2");
        o.require(t.report.members.size() == 32, "thm2: expected 32 members");
        require_close(o, t.report.expected.ebits, 1.0, 1e-9, "thm2 ebits");
        o.require(t.seconds < 2.0, "thm2 took " + std::to_string(t.seconds) + " s");
        o.detail << " 32 states, " << t.report.expected.ebits << " ebit, " << t.seconds << " s";
    }

    // 3: recovery.
    {
        Outcome &o = results[3];
        auto r1 = verify_recovery(build(1, q4), ghz_basis(4));
        auto r2 = verify_recovery(build(2, q5), ghz_basis(5));
        o.require(r1.ok && r1.min_fidelity >= 1 - 1e-10, "thm1 recovery");
        o.require(r2.ok && r2.min_fidelity >= 1 - 1e-10, "thm2 recovery");
        o.detail << " min fidelity " << std::min(r1.min_fidelity, r2.min_fidelity) << " over "
                 << r1.checked + r2.checked << " leaf states";
    }

    // 4: cardinalities.
    {
        Outcome &o = results[4];
        int oa = count_asym4(m4), os = count_sym4(m4), o5 = count_sym5(m5);
        o.require(oa == 52 && os == 50 && o5 == 50, "oracle counts differ from 52/50/50");
        o.require(static_cast<int>(ops_asym4(m4).size()) == oa, "asym4 size");
        o.require(static_cast<int>(ops_sym4(m4).size()) == os, "sym4 size");
        o.require(static_cast<int>(ops_sym5(m5).size()) == o5, "sym5 size");
        o.detail << " asym4 " << oa << ", sym4 " << os << ", sym5 " << o5;
    }

    // 5: mutual orthogonality.
    {
        Outcome &o = results[5];
        double worst = 0.0;
        auto check = [&](const Ensemble &e, const std::string &tag) {
            auto r = check_mutual_orthogonality(e, 1e-10);
            worst = std::max(worst, r.max_abs_overlap);
            o.require(r.max_abs_overlap < 1e-10, tag);
        };
        check(ghz_basis(4), "ghz4");
        check(ghz_basis(5), "ghz5");
        for (const auto &d : {m4, u4}) {
            check(ops_asym4(d), "asym4 " + dims_text(d));
            check(ops_sym4(d), "sym4 " + dims_text(d));
        }
        for (const auto &d : {m5, u5}) {
            check(ops_sym5(d), "sym5 " + dims_text(d));
        }
        o.detail << " max overlap " << worst;
    }

    // 6, 7: four-party theorems.
    std::map<std::pair<int, Dims>, RunReport> four;
    {
        Outcome &o = results[6];
        double total = 0.0;
        for (int id = 3; id <= 7; id++) {
            for (const auto &d : {m4, u4}) {
                auto t = timed_run(id, d);
                total += t.seconds;
                std::string tag = "thm" + std::to_string(id) + " at " + dims_text(d);
                require_discrimination(o, t.report, tag);
                o.require(t.report.orthogonality.violations.empty(), tag + ": orthogonality violated");
                four[{id, d}] = std::move(t.report);
            }
        }
        o.require(total < 30.0, "took " + std::to_string(total) + " s");
        o.detail << " 10 runs, " << total << " s";
    }
    {
        Outcome &o = results[7];
        auto t5 = timed_run(5, d4433);
        four[{5, d4433}] = std::move(t5.report);
        const double l3 = std::log2(3.0);
        for (const auto &d : {m4, u4}) {
            std::string at = " at " + dims_text(d);
            require_close(o, four[{3, d}].expected.ebits, 1 + std::log2(d[3]), 1e-9, "thm3" + at);
            require_close(o, four[{4, d}].expected.ebits, 1 + l3, 1e-9, "thm4" + at);
            require_close(o, four[{6, d}].expected.ebits, l3 + std::log2(d[3]), 1e-9, "thm6" + at);
        }
        auto [r_a, s_a] = thm5_rs(m4);
        auto [r_b, s_b] = thm5_rs(d4433);
        o.require(r_a == 30 && s_a == 52 && r_b == 48 && s_b == 80, "thm5 closed form");
        for (const auto &[d, r, s] : {std::tuple{m4, r_a, s_a}, std::tuple{d4433, r_b, s_b}}) {
            const auto &rep = four[{5, d}];
            double frac = static_cast<double>(r) / static_cast<double>(s);
            require_close(o, rep.expected.copies("EPR(2)@B,D"), frac, 1e-9, "thm5 B-D copies at " + dims_text(d));
            require_close(o, rep.expected.ebits, 2 + frac, 1e-9, "thm5 total at " + dims_text(d));
        }
        auto [r7, s7] = thm7_rs(m4);
        o.require(r7 == 44 && s7 == 50, "thm7 closed form");
        double frac7 = static_cast<double>(r7) / static_cast<double>(s7);
        require_close(o, four[{7, m4}].expected.copies("EPR(2)@A,B"), frac7, 1e-9, "thm7 extra-pair mass");
        require_close(o, four[{7, m4}].expected.ebits, 1 + frac7 + l3, 1e-9, "thm7 total");
        o.detail << " thm5 " << four[{5, m4}].expected.copies("EPR(2)@B,D") << " = " << r_a << "/" << s_a
                 << ", thm7 " << four[{7, m4}].expected.copies("EPR(2)@A,B") << " = " << r7 << "/" << s7;
    }

    // 8: the (d3, d4) comparison at d1 = d2 = 4.
    {
        Outcome &o = results[8];
        auto total5 = [](int d3, int d4) {
            auto [r, s] = thm5_rs(Dims{4, 4, d3, d4});
            return 2.0 + static_cast<double>(r) / static_cast<double>(s);
        };
        double t4 = 1 + std::log2(3.0);
        o.require(total5(3, 3) > t4, "thm5 not above thm4 at (3,3)");
        o.require(total5(20, 20) < t4, "thm5 not below thm4 at (20,20)");
        auto rows = fig41_data(3, 20, 3, 20);
        o.require(rows.size() == 18 * 18, "grid size");
        for (const auto &row : rows) {
            if (std::abs(row.thm5_ebits - total5(row.d3, row.d4)) > 1e-12 || std::abs(row.thm4_ebits - t4) > 1e-12) {
                o.require(false, "table row disagrees with the closed form");
                break;
            }
        }
        o.detail << " (3,3): " << total5(3, 3) << " > " << t4 << ", (20,20): " << total5(20, 20) << " < " << t4;
    }

    // 9: five-party theorems.
    std::vector<RunReport> five;
    {
        Outcome &o = results[9];
        double total = 0.0;
        for (int id = 8; id <= 10; id++) {
            auto t = timed_run(id, m5);
            total += t.seconds;
            require_discrimination(o, t.report, "thm" + std::to_string(id));
            five.push_back(std::move(t.report));
        }
        auto count = [](const CostTally &t, const std::string &prefix) {
            double n = 0.0;
            for (const auto &[key, entry] : t.entries) {
                n += key.rfind(prefix, 0) == 0 ? entry.copies : 0.0;
            }
            return n;
        };
        require_close(o, count(five[0].expected, "EPR(2)@"), 4.0, 1e-9, "thm8 EPR(2) copies");
        o.require(five[0].expected.entries.size() == 4, "thm8 should use four distinct pairs");
        require_close(o, count(five[1].expected, "GHZ3@"), 3.0, 1e-9, "thm9 GHZ3 copies");
        require_close(o, count(five[2].expected, "F4@"), 2.0, 1e-9, "thm10 F4 copies");
        o.require(total < 60.0, "took " + std::to_string(total) + " s");
        o.detail << " 4 EPR / 3 GHZ3 / 2 F4, " << total << " s";
    }

    // 10: structural properties.
    {
        Outcome &o = results[10];
        std::size_t measurements = 0;
        double worst = 0.0;
        for (const auto &info : theorems()) {
            std::vector<Dims> all{info.default_dims};
            if (info.id >= 3 && info.id <= 7) {
                all.push_back(u4);
            }
            for (const auto &d : all) {
                auto p = build(info.id, d);
                auto a = locc_test::audit_measurements(p);
                measurements += a.measurements;
                worst = std::max(worst, a.max_completeness_error);
                std::string tag = "thm" + std::to_string(info.id) + " at " + dims_text(d);
                o.require(a.incomplete.empty(), tag + ": incomplete measurement");
                o.require(a.nonlocal.empty(), tag + ": nonlocal projector");
                o.require(validate(p).ok(), tag + ": validate");
            }
        }
        auto pair_tree = [](NodePtr root) {
            return ProtocolTree{"mutant", SystemLayout::lettered(Dims{3, 3}), std::move(root), {}, {}};
        };
        auto dropped = level_measurement("A", {"A"}, 3);
        dropped.outcomes.pop_back();
        o.require(has_kind(validate(pair_tree(measure(dropped, leaves(2)))), "incomplete"), "dropped outcome");
        auto cross = level_measurement("A", {"A", "B"}, 3);
        o.require(has_kind(validate(pair_tree(measure(cross, leaves(3)))), "locality"), "cross-party term");
        auto early = level_measurement("A", {"a"}, 2);
        auto root = measure(early, {attach(epr(2, {"A", "a"}, {"B", "b"}), identified("x")), identified("y")});
        o.require(has_kind(validate(pair_tree(root)), "unattached-wire"), "premature ancilla");
        o.detail << " " << measurements << " measurements, max |sum - I| " << worst << ", 3 mutants rejected";
    }

    // 11: terminal leaves.
    {
        Outcome &o = results[11];
        std::size_t subsets = 0, pairs = 0;
        auto scan = [&](const RunReport &r, const std::string &tag) {
            for (const auto &leaf : r.leaves) {
                if (leaf.verdict.rfind("subset", 0) == 0) {
                    subsets++;
                    o.require(leaf.ok, tag + " subset leaf " + leaf.path + ": " + leaf.detail);
                } else if (leaf.verdict.rfind("pair", 0) == 0) {
                    pairs++;
                    o.require(leaf.ok && leaf.candidates.size() == 2, tag + " pair leaf " + leaf.path);
                }
            }
            for (const auto &f : r.failures) {
                o.require(f.kind != "finisher-refused" && f.kind != "pair-not-orthogonal", tag + ": " + f.message);
            }
        };
        for (const auto &[key, r] : four) {
            scan(r, "thm" + std::to_string(key.first));
        }
        for (std::size_t k = 0; k < five.size(); k++) {
            scan(five[k], "thm" + std::to_string(8 + k));
        }
        // The GHZ-basis trees end on pairs.
        scan(run(build(1, q4), ghz_basis(4)), "thm1");
        scan(run(build(2, q5), ghz_basis(5)), "thm2");
        o.require(subsets > 0 && pairs > 0, "no terminal leaves seen");
        o.detail << " " << subsets << " subset leaves, " << pairs << " pair leaves";
    }

    const char *names[12] = {"",
                             "thm1 four-qubit GHZ basis",
                             "thm2 five-qubit GHZ basis",
                             "recovery by repeated CNOTs",
                             "ensemble cardinalities",
                             "mutual orthogonality",
                             "thm3-7 discrimination",
                             "cost identities",
                             "thm4 vs thm5 comparison",
                             "thm8-10 five-party resources",
                             "measurement structure",
                             "finisher soundness"};
    bool all = true;
    for (int k = 1; k <= 11; k++) {
        all = all && results[k].pass;
        std::printf("%s criterion %d (%s):%s\n", results[k].pass ? "PASS" : "FAIL", k, names[k],
                    results[k].detail.str().c_str());
    }
    return all ? 0 : 1;
}
