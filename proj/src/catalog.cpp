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

#include "locc/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace locc {

namespace {

using T = TermSpec;

/// Measurement "M_k" whose explicit outcomes are M_{k,1}.. and, when one child more is given than there
/// are outcomes, a final complement outcome.
NodePtr meas(const std::string &k, const std::string &party, std::vector<WireSpec> wires,
             std::vector<std::vector<TermSpec>> outcomes, std::vector<NodePtr> children) {
    std::vector<std::pair<std::string, std::vector<TermSpec>>> named;
    for (std::size_t j = 0; j < outcomes.size(); j++) {
        named.emplace_back("M_{" + k + "," + std::to_string(j + 1) + "}", std::move(outcomes[j]));
    }
    std::optional<std::string> complement;
    if (children.size() == named.size() + 1) {
        complement = "M_{" + k + "," + std::to_string(named.size() + 1) + "}";
    } else if (children.size() != named.size()) {
        throw std::logic_error("catalog: child count does not match outcomes of M_" + k);
    }
    return measure(make_measurement(party, std::move(wires), std::move(named), complement), std::move(children),
                   "M_" + k);
}

NodePtr sub(std::vector<std::string> families) {
    return terminal_subset(std::move(families));
}

/// Mirrors a subtree onto the outcome where the listed qubit ancillas are anti-correlated.
NodePtr flip(const NodePtr &node, std::vector<std::string> wires) {
    std::vector<WireShift> shifts;
    for (auto &w : wires) {
        shifts.push_back({std::move(w), 2, 1});
    }
    return relabel_subtree(node, shifts);
}

/// The three cyclic outcomes of a qutrit ancilla pairing: canonical branch plus shifts by 1 and 2.
std::vector<NodePtr> cyclic3(const NodePtr &node, const std::string &x, const std::string &y) {
    return {node, relabel_subtree(node, {{x, 3, 1}, {y, 3, 1}}), relabel_subtree(node, {{x, 3, 2}, {y, 3, 2}})};
}

/// P[|0>_X;|0>_x] + P[(|1>..|d-1>)_X;|1>_x] against its complement.
std::vector<std::vector<TermSpec>> parity_split(const std::string &main, int d, const std::string &anc) {
    return {{T{{main, {0}}, {anc, {0}}}, T{{main, levels(1, d - 1)}, {anc, {1}}}}};
}

/// Qutrit-ancilla analogue: 0 -> 0, middle levels -> 1, top -> 2, and the +1 shifted pattern.
std::vector<std::vector<TermSpec>> cyclic_split(const std::string &main, int d, const std::string &anc) {
    return {
        {T{{main, {0}}, {anc, {0}}}, T{{main, levels(1, d - 2)}, {anc, {1}}}, T{{main, {d - 1}}, {anc, {2}}}},
        {T{{main, {0}}, {anc, {1}}}, T{{main, levels(1, d - 2)}, {anc, {2}}}, T{{main, {d - 1}}, {anc, {0}}}},
    };
}

std::string ghz_label(const std::string &tag, int i, int sign) {
    return Label{tag, {{"i", i}, {"sign", sign}}}.str();
}

NodePtr ghz_pair(const std::string &tag, int i) {
    return terminal_pair(ghz_label(tag, i, 1), ghz_label(tag, i, -1));
}

std::vector<int> owned(std::span<const int> dims) {
    return {dims.begin(), dims.end()};
}

ProtocolTree thm1() {
    const WireSpec A{"A", 2}, a{"a", 2}, B{"B", 2}, b{"b", 2};
    // Pattern index reached for each (M_2, M_3) outcome pair and M_4 outcome.
    const int table[2][2][2] = {{{0, 4}, {5, 1}}, {{6, 2}, {3, 7}}};
    auto bell = [&] { return std::vector<std::vector<TermSpec>>{{T{{"A", {0}}, {"a", {0}}}, T{{"A", {1}}, {"a", {1}}}}}; };
    std::vector<NodePtr> after_m2;
    for (int m2 = 0; m2 < 2; m2++) {
        std::vector<NodePtr> after_m3;
        for (int m3 = 0; m3 < 2; m3++) {
            after_m3.push_back(cnot("D", "A",
                                    meas("4", "A", {A, a}, bell(),
                                         {ghz_pair("psi", table[m2][m3][0]), ghz_pair("psi", table[m2][m3][1])})));
        }
        after_m2.push_back(cnot("C", "A", meas("3", "A", {A}, {{T{{"A", {0}}}}}, after_m3)));
    }
    NodePtr s = meas("2", "A", {A, a}, bell(), after_m2);
    NodePtr root = attach(epr(2, {"A", "a"}, {"B", "b"}),
                          meas("1", "B", {B, b}, {{T{{"B", {0}}, {"b", {0}}}, T{{"B", {1}}, {"b", {1}}}}},
                               {s, flip(s, {"a", "b"})}));
    std::vector<int> d{2, 2, 2, 2};
    return {"thm1", SystemLayout::lettered(d), root, {{"C", "A"}, {"D", "A"}}, {}};
}

ProtocolTree thm2() {
    const WireSpec A{"A", 2}, a{"a", 2}, B{"B", 2}, b{"b", 2};
    // Indexed by the (M_2, M_3, M_4) outcomes, then M_5.
    const int table[2][2][2][2] = {{{{0, 4}, {6, 2}}, {{3, 7}, {5, 1}}}, {{{14, 10}, {8, 12}}, {{13, 9}, {11, 15}}}};
    const std::vector<TermSpec> same{T{{"A", {0}}, {"a", {0}}}, T{{"A", {1}}, {"a", {1}}}};
    const std::vector<TermSpec> differ{T{{"A", {0}}, {"a", {1}}}, T{{"A", {1}}, {"a", {0}}}};
    std::vector<NodePtr> after_m2;
    for (int m2 = 0; m2 < 2; m2++) {
        std::vector<NodePtr> after_m3;
        for (int m3 = 0; m3 < 2; m3++) {
            std::vector<NodePtr> after_m4;
            for (int m4 = 0; m4 < 2; m4++) {
                after_m4.push_back(cnot("C", "A",
                                        meas("5", "A", {A}, {{T{{"A", {0}}}}},
                                             {ghz_pair("phi", table[m2][m3][m4][0]),
                                              ghz_pair("phi", table[m2][m3][m4][1])})));
            }
            after_m3.push_back(cnot("D", "A", meas("4", "A", {A, a}, {same}, after_m4)));
        }
        after_m2.push_back(cnot("E", "A", meas("3", "A", {A}, {{T{{"A", {0}}}}}, after_m3)));
    }
    NodePtr s = meas("2", "A", {A, a}, {same, differ}, after_m2);
    NodePtr root = attach(epr(2, {"A", "a"}, {"B", "b"}),
                          meas("1", "B", {B, b}, {{T{{"B", {0}}, {"b", {0}}}, T{{"B", {1}}, {"b", {1}}}}},
                               {s, flip(s, {"a", "b"})}));
    std::vector<int> d{2, 2, 2, 2, 2};
    return {"thm2", SystemLayout::lettered(d), root, {{"C", "A"}, {"D", "A"}, {"E", "A"}}, {}};
}

ProtocolTree thm3(const std::vector<int> &d) {
    const int t1 = d[0] - 1, t2 = d[1] - 1, t3 = d[2] - 1, t4 = d[3] - 1;
    const WireSpec A{"A", d[0]}, a{"a", 2}, B{"B", d[1]}, C{"C", d[2]}, D{"D", d[3]}, c{"c", 2};
    const std::vector<WireSpec> Ct{C, D, c};

    NodePtr m4b = meas("4'", "C", Ct,
                       {{T{{"C", {t3}}, {"D", {t4}}, {"c", {1}}}},
                        {T{{"C", levels(1, t3 - 1)}, {"D", {0}}, {"c", {1}}}}},
                       {sub({"H_4"}), sub({"H_14"}), sub({"H_10", "H_18"})});
    NodePtr m4 = meas("4", "B", {B}, {{T{{"B", {t2}}}}}, {sub({"H_5", "H_6"}), m4b});
    NodePtr m7 = meas("7", "C", Ct,
                      {{T{{"C", {0}}, {"D", {0}}, {"c", {0}}}},
                       {T{{"C", levels(1, t3 - 1)}, {"D", {t4}}, {"c", {0}}}}},
                      {sub({"H_8"}), sub({"H_13"}), sub({"H_9", "H_17"})});
    NodePtr m6 = meas("6", "B", {B}, {{T{{"B", {0}}}}}, {sub({"H_1", "H_2"}), m7});
    NodePtr m5b = meas("5'", "B", {B}, {{T{{"B", {0}}}}}, {sub({"H_12", "H_16"}), sub({"H_11", "H_15"})});
    NodePtr m5 = meas("5", "C", Ct,
                      {{T{{"C", levels(1, t3)}, {"D", levels(0, t4 - 1)}, {"c", {1}}},
                        T{{"C", levels(0, t3 - 1)}, {"D", levels(1, t4)}, {"c", {1}}}},
                       {T{{"C", {t3}}, {"D", {t4}}}}},
                      {m5b, sub({"H_3"}), m6});
    NodePtr m3 = meas("3", "A", {A, a}, {{T{{"A", {t1}}, {"a", {1}}}}}, {m4, m5});
    NodePtr m2 = meas("2", "C", Ct, {{T{{"C", {0}}, {"D", {0}}, {"c", {1}}}}}, {sub({"H_7"}), m3});
    NodePtr m1 = meas("1", "A", {A, a}, parity_split("A", d[0], "a"), {m2, flip(m2, {"a", "c"})});
    NodePtr root = teleport("D", "C", d[3], attach(epr(2, {"A", "a"}, {"C", "c"}), m1));
    return {"thm3", SystemLayout::lettered(d), root, {}, {}};
}

ProtocolTree thm4(const std::vector<int> &d) {
    const int t1 = d[0] - 1, t2 = d[1] - 1, t3 = d[2] - 1, t4 = d[3] - 1;
    const WireSpec A{"A", d[0]}, a{"a", 2}, B{"B", d[1]}, C{"C", d[2]}, c{"c", 3};
    const std::vector<WireSpec> Dt{{"D", d[3]}, {"v1", 2}, {"v2", 3}};

    NodePtr m10 = meas("10", "D", Dt,
                       {{T{{"D", {0}}, {"v1", {0}}, {"v2", {0}}}}, {T{{"D", {t4}}, {"v1", {0}}, {"v2", {1}}}}},
                       {sub({"H_8"}), sub({"H_13"}), sub({"H_9", "H_17"})});
    NodePtr m9a = meas("9", "A", {A, a}, {{T{{"A", {0}}, {"a", {0}}}}}, {sub({"H_1", "H_2"}), sub({"H_12", "H_16"})});
    NodePtr m9b = meas("9", "A", {A, a}, {{T{{"A", {0}}, {"a", {0}}}}}, {m10, sub({"H_11", "H_15"})});
    NodePtr m8 = meas("8", "B", {B}, {{T{{"B", {0}}}}}, {m9a, m9b});
    NodePtr m7 = meas("7", "D", Dt, {{T{{"D", {t4}}, {"v1", {0, 1}}, {"v2", {2}}}}}, {sub({"H_3"}), m8});
    NodePtr m6 = meas("6", "D", Dt,
                      {{T{{"D", {t4}}, {"v1", {1}}, {"v2", {2}}}}, {T{{"D", {0}}, {"v1", {1}}, {"v2", {1}}}}},
                      {sub({"H_4"}), sub({"H_14"}), sub({"H_10", "H_18"})});
    NodePtr m5 = meas("5", "B", {B}, {{T{{"B", {t2}}}}}, {sub({"H_5", "H_6"}), m6});
    NodePtr m4 = meas("4", "A", {A}, {{T{{"A", {t1}}}}}, {m5, m7});
    NodePtr m3 = meas("3", "D", Dt, {{T{{"D", {0}}, {"v1", {1}}, {"v2", {0}}}}}, {sub({"H_7"}), m4});
    NodePtr m2 = meas("2", "C", {C, c}, cyclic_split("C", d[2], "c"), cyclic3(m3, "c", "v2"));
    NodePtr m1 = meas("1", "A", {A, a}, parity_split("A", d[0], "a"), {m2, flip(m2, {"a", "v1"})});
    (void)t3;
    NodePtr root = attach(epr(2, {"A", "a"}, {"D", "v1"}), attach(epr(3, {"C", "c"}, {"D", "v2"}), m1));
    return {"thm4", SystemLayout::lettered(d), root, {}, {}};
}

ProtocolTree thm5(const std::vector<int> &d) {
    const int t1 = d[0] - 1, t2 = d[1] - 1, t3 = d[2] - 1, t4 = d[3] - 1;
    const WireSpec A{"A", d[0]}, a{"a", 2}, B{"B", d[1]}, b{"b", 2}, C{"C", d[2]}, c{"c", 2};
    const std::vector<WireSpec> Dt{{"D", d[3]}, {"v1", 2}, {"v2", 2}};
    const std::vector<WireSpec> Dtt{{"D", d[3]}, {"v1", 2}, {"v3", 2}, {"v2", 2}};

    NodePtr m10 = meas("10", "C", {C}, {{T{{"C", {t3}}}}}, {sub({"H_2", "H_3"}), sub({"H_1", "H_11", "H_13"})});
    NodePtr m9 = meas("9", "D", Dtt,
                      {
                          {T{{"D", {0}}, {"v1", {0}}, {"v3", {1}}, {"v2", {0}}}},
                          {T{{"D", {0}}, {"v1", {1}}, {"v3", {0}}, {"v2", {1}}}},
                          {T{{"D", levels(0, t4 - 1)}, {"v1", {1}}, {"v3", {1}}, {"v2", {1}}}},
                          {T{{"D", levels(1, t4)}, {"v1", {1}}, {"v3", {0}}, {"v2", {0}}}},
                          {T{{"D", levels(1, t4)}, {"v1", {0}}, {"v3", {1}}, {"v2", {0}}},
                           T{{"D", levels(1, t4 - 1)}, {"v1", {0}}, {"v3", {1}}, {"v2", {1}}}},
                      },
                      {sub({"H_8"}), sub({"H_12"}), sub({"H_15"}), sub({"H_16"}), sub({"H_9", "H_17"}), m10});
    NodePtr m8 = meas("8", "B", {B, b}, parity_split("B", d[1], "b"), {m9, flip(m9, {"b", "v3"})});
    NodePtr extra = attach(epr(2, {"B", "b"}, {"D", "v3"}), m8, "extra B-D pair");
    NodePtr m7 = meas("7", "C", {C}, {{T{{"C", levels(1, t3 - 1)}}}}, {sub({"H_14"}), sub({"H_10", "H_18"})});
    NodePtr m6 = meas("6", "D", Dt, {{T{{"D", {t4}}, {"v1", {1}}, {"v2", {1}}}}}, {sub({"H_4"}), m7});
    NodePtr m5 = meas("5", "B", {B}, {{T{{"B", {t2}}}}}, {sub({"H_5", "H_6"}), m6});
    NodePtr m4 = meas("4", "A", {A}, {{T{{"A", {t1}}}}}, {m5, extra});
    NodePtr m3 = meas("3", "D", Dt, {{T{{"D", {0}}, {"v1", {1}}, {"v2", {0}}}}}, {sub({"H_7"}), m4});
    NodePtr m2 = meas("2", "C", {C, c}, parity_split("C", d[2], "c"), {m3, flip(m3, {"c", "v2"})});
    NodePtr m1 = meas("1", "A", {A, a}, parity_split("A", d[0], "a"), {m2, flip(m2, {"a", "v1"})});
    NodePtr root = attach(epr(2, {"A", "a"}, {"D", "v1"}), attach(epr(2, {"C", "c"}, {"D", "v2"}), m1));
    return {"thm5", SystemLayout::lettered(d), root, {}, {}};
}

ProtocolTree thm6(const std::vector<int> &d) {
    const int t2 = d[1] - 1, t3 = d[2] - 1, t4 = d[3] - 1;
    const WireSpec A{"A", d[0]}, a{"a", 3}, B{"B", d[1]};
    const std::vector<WireSpec> Ct{{"C", d[2]}, {"D", d[3]}, {"c", 3}};
    auto box = [](std::vector<int> cl, std::vector<int> dl, std::vector<int> al) {
        return T{{"C", std::move(cl)}, {"D", std::move(dl)}, {"c", std::move(al)}};
    };

    // Branch M_{3,2}.
    NodePtr m6 = meas("6", "C", Ct,
                      {{box({t3}, levels(1, t4 - 1), {0})},
                       {box({0}, levels(1, t4), {1})},
                       {box(levels(0, t3 - 1), {t4}, {2})},
                       {box({t3}, {t4}, {0, 2})}},
                      {sub({"H_{7,1}"}), sub({"H_{1,1}"}), sub({"H_{5,2}"}), sub({"H_{4,4}"}), sub({"H_{1,4}"})});
    // Branch M_{3,1}.
    NodePtr m5 = meas("5", "B", {B}, {{T{{"B", {0}}}}},
                      {sub({"H_{1,2}", "H_{3,1}"}), sub({"H_{5,4}", "H_{6,1}"})});
    NodePtr m4 = meas("4", "C", Ct,
                      {{box(levels(1, t3 - 1), {0}, {1})},
                       {box(levels(1, t3 - 1), {t4}, {1})},
                       {box({t3}, {t4}, {2})},
                       {box(levels(1, t3 - 1), {t4}, {2})},
                       {box(levels(1, t3 - 1), levels(0, t4 - 1), {2})},
                       {box({0}, {t4}, {1, 2})}},
                      {sub({"H_{7,2}"}), sub({"H_{7,4}", "H_{8,2}"}), sub({"H_{6,4}"}), sub({"H_{4,3}"}),
                       sub({"H_{5,1}"}), sub({"H_{3,4}", "H_{6,3}"}), m5});
    NodePtr m3 = meas("3", "B", {B}, {{T{{"B", {0, t2}}}}}, {m4, m6});
    NodePtr m2c = meas("2'''", "B", {B}, {{T{{"B", {t2}}}}}, {sub({"H_{4,2}"}), sub({"H_{7,3}", "H_{8,1}"})});
    NodePtr m2b = meas("2''", "C", Ct, {{box({0}, {0}, {2})}}, {sub({"H_{3,3}"}), m2c});
    NodePtr m2a = meas("2'", "B", {B}, {{T{{"B", {0}}}}}, {sub({"H_{2,1}"}), m2b});
    NodePtr m2 = meas("2", "C", Ct,
                      {{box({t3}, {0}, {2})},
                       {box(levels(1, t3), {0}, {0})},
                       {box({t3}, {0, t4}, {1})},
                       {box({0}, levels(0, t4 - 1), {2}), box({t3}, levels(1, t4 - 1), {2})},
                       {box({0}, {0}, {0, 1})},
                       {box(levels(1, t3 - 1), levels(1, t4 - 1), {0})},
                       {box(levels(0, t3 - 1), {t4}, {0})}},
                      {sub({"H_{6,2}"}), sub({"H_{2,3}", "H_{3,2}"}), sub({"H_{4,1}", "H_{5,3}"}), m2a,
                       sub({"H_{2,4}"}), sub({"H_{1,3}"}), sub({"H_{2,2}"}), m3});
    NodePtr m1 = meas("1", "A", {A, a}, cyclic_split("A", d[0], "a"), cyclic3(m2, "a", "c"));
    NodePtr root = teleport("D", "C", d[3], attach(epr(3, {"A", "a"}, {"C", "c"}), m1));
    return {"thm6", SystemLayout::lettered(d), root, {}, {}};
}

ProtocolTree thm7(const std::vector<int> &d) {
    const int t1 = d[0] - 1, t2 = d[1] - 1, t3 = d[2] - 1;
    const WireSpec B{"B", d[1]}, b{"b", 2}, C{"C", d[2]}, c{"c", 2}, D{"D", d[3]}, v{"v", 3};
    const std::vector<WireSpec> A3{{"A", d[0]}, {"a1", 2}, {"a2", 3}};
    const std::vector<WireSpec> A4{{"A", d[0]}, {"a1", 2}, {"a2", 3}, {"a3", 2}};
    const WireSpec A{"A", d[0]};
    auto at = [](std::vector<int> al, std::vector<int> x1, std::vector<int> x2, std::vector<int> x3) {
        return T{{"A", std::move(al)}, {"a1", std::move(x1)}, {"a2", std::move(x2)}, {"a3", std::move(x3)}};
    };
    auto share_ab = [&](const NodePtr &after_m4) {
        NodePtr m4 = meas("4", "B", {B, b}, parity_split("B", d[1], "b"), {after_m4, flip(after_m4, {"a3", "b"})});
        return attach(epr(2, {"A", "a3"}, {"B", "b"}), m4, "extra A-B pair");
    };

    // Branch M_{3,3}.
    NodePtr m9 = meas("9", "A", A4,
                      {{at(levels(1, t1), {1}, {0}, {1})}, {at({t1}, {0}, {1}, {1})}, {at({t1}, {1}, {1}, {1})}},
                      {sub({"H_{1,4}"}), sub({"H_{7,3}"}), sub({"H_{8,1}"}), sub({"H_{7,4}", "H_{5,3}"})});
    auto m8 = [&](NodePtr inner, NodePtr outer) {
        return meas("8", "C", {C}, {{T{{"C", levels(1, t3 - 1)}}}}, {std::move(inner), std::move(outer)});
    };
    NodePtr m7 = meas("7", "A", {A}, {{T{{"A", {t1}}}}},
                      {m8(sub({"H_{5,1}"}), sub({"H_{4,2}", "H_{6,2}"})),
                       m8(sub({"H_{7,2}", "H_{8,2}"}), sub({"H_{4,1}"}))});
    NodePtr m6 = meas("6", "B", {B}, {{T{{"B", {t2}}}}}, {m7, m9});
    NodePtr m5 = meas("5", "A", A4, {{at({t1}, {0}, {0}, {1})}, {at({t1}, {0}, {0, 1}, {0})}},
                      {sub({"H_{3,3}"}), sub({"H_{2,1}"}), m6});
    // Branch M_{3,4}.
    NodePtr m16 = meas("16", "A", A4,
                       {{at(levels(1, t1), {0}, {2}, {0})}, {at({t1}, {0}, {2}, {1})}, {at({0}, {0, 1}, {2}, {0})}},
                       {sub({"H_{3,4}"}), sub({"H_{6,3}"}), sub({"H_{2,2}"}), sub({"H_{4,3}"})});
    NodePtr m15 = meas("15", "A", A4, {{at({0}, {1}, {2}, {1})}, {at({t1}, {1}, {2}, {0})}},
                       {sub({"H_{6,1}"}), sub({"H_{6,4}"}), sub({"H_{3,1}"})});
    NodePtr m14 = meas("14", "C", {C}, {{T{{"C", {t3}}}}}, {m15, m16});
    NodePtr m13 = meas("13", "A", {A}, {{T{{"A", levels(1, t1 - 1)}}}}, {sub({"H_{1,1}"}), sub({"H_{4,4}", "H_{5,2}"})});
    NodePtr m12 = meas("12", "B", {B}, {{T{{"B", levels(1, t2 - 1)}}}}, {m13, m14});
    NodePtr m11 = meas("11", "C", {C}, {{T{{"C", levels(1, t3 - 1)}}}}, {sub({"H_{1,3}"}), sub({"H_{5,4}", "H_{7,1}"})});
    NodePtr m10 = meas("10", "A", A4, {{at(levels(1, t1 - 1), {1}, {1}, {0})}, {at(levels(0, t1 - 1), {1}, {1}, {1})}},
                       {sub({"H_{1,2}"}), m11, m12});

    auto a3 = [](std::vector<int> al, std::vector<int> x1, std::vector<int> x2) {
        return T{{"A", std::move(al)}, {"a1", std::move(x1)}, {"a2", std::move(x2)}};
    };
    NodePtr m3 = meas("3", "A", A3,
                      {{a3({0}, {1}, {0})},
                       {a3(levels(0, t1 - 1), {0}, {0})},
                       {a3(levels(1, t1 - 1), {1}, {2}), a3(levels(1, t1), {1}, {0}), a3({t1}, {1}, {1}),
                        a3({t1}, {0}, {1}), a3({t1}, {0}, {0})}},
                      {sub({"H_{2,3}", "H_{3,2}"}), sub({"H_{2,4}"}), share_ab(m5), share_ab(m10)});
    NodePtr m2 = meas("2", "D", {D, v}, cyclic_split("D", d[3], "v"), cyclic3(m3, "a2", "v"));
    NodePtr m1 = meas("1", "C", {C, c}, parity_split("C", d[2], "c"), {m2, flip(m2, {"a1", "c"})});
    NodePtr root = attach(epr(2, {"A", "a1"}, {"C", "c"}), attach(epr(3, {"A", "a2"}, {"D", "v"}), m1));
    return {"thm7",
            SystemLayout::lettered(d),
            root,
            {},
            {"the resource statement places the fractional pair between B and D; the executable steps share it "
             "between A and B, which is what this tree does"}};
}

/// Alice, Bob, Charlie (and Dave) each split on their ancilla first; wires[k] = {main, anc, partner wires...}.
NodePtr split_chain(const std::vector<int> &d, const std::vector<std::vector<std::string>> &groups, std::size_t k,
                    const NodePtr &tail) {
    if (k == groups.size()) {
        return tail;
    }
    NodePtr inner = split_chain(d, groups, k + 1, tail);
    const auto &g = groups[k];
    std::vector<std::string> mirrored(g.begin() + 1, g.end());
    return meas(std::to_string(k + 1), g[0], {{g[0], d[k]}, {g[1], 2}}, parity_split(g[0], d[k], g[1]),
                {inner, flip(inner, mirrored)});
}

ProtocolTree thm8(const std::vector<int> &d) {
    const int t5 = d[4] - 1;
    const std::vector<WireSpec> Et{{"E", d[4]}, {"e1", 2}, {"e2", 2}, {"e3", 2}, {"e4", 2}};
    auto et = [](std::vector<int> el, std::vector<int> x1, std::vector<int> x2, std::vector<int> x3,
                 std::vector<int> x4) {
        T t{{"E", std::move(el)}};
        if (!x1.empty()) t["e1"] = std::move(x1);
        if (!x2.empty()) t["e2"] = std::move(x2);
        if (!x3.empty()) t["e3"] = std::move(x3);
        if (!x4.empty()) t["e4"] = std::move(x4);
        return t;
    };
    const auto all = levels(0, t5), upper = levels(1, t5);
    NodePtr m5 = meas("5", "E", Et,
                      {{et(upper, {1}, {0}, {1}, {0})},
                       {et(upper, {0}, {1}, {0}, {1})},
                       {et({0}, {1}, {0}, {1}, {1})},
                       {et(upper, {0}, {1}, {1}, {0})},
                       {et({0}, {1}, {1}, {0}, {1})},
                       {et(upper, {0}, {0}, {}, {})},
                       {et(all, {1}, {0}, {0}, {})},
                       {et({0}, {}, {}, {1}, {0})},
                       {et(all, {}, {1}, {0}, {0})}},
                      {sub({"H_6"}), sub({"H_7"}), sub({"H_8"}), sub({"H_9"}), sub({"H_10"}), sub({"H_4"}),
                       sub({"H_3"}), sub({"H_1"}), sub({"H_2"}), sub({"H_5"})});
    NodePtr body = split_chain(d, {{"A", "a", "e1"}, {"B", "b", "e2"}, {"C", "c", "e3"}, {"D", "v", "e4"}}, 0, m5);
    NodePtr root = attach(epr(2, {"A", "a"}, {"E", "e1"}),
                          attach(epr(2, {"B", "b"}, {"E", "e2"}),
                                 attach(epr(2, {"C", "c"}, {"E", "e3"}), attach(epr(2, {"D", "v"}, {"E", "e4"}), body))));
    return {"thm8", SystemLayout::lettered(d), root, {}, {}};
}

ProtocolTree thm9(const std::vector<int> &d) {
    const int t4 = d[3] - 1, t5 = d[4] - 1;
    const std::vector<WireSpec> Et{{"E", d[4]}, {"e1", 2}, {"e2", 2}, {"e3", 2}};
    const std::vector<WireSpec> Dt{{"D", d[3]}, {"v1", 2}, {"v2", 2}, {"v3", 2}};
    auto t = [](const std::string &m, std::vector<int> ml, const std::string &p, std::vector<int> x1,
                std::vector<int> x2, std::vector<int> x3) {
        T out{{m, std::move(ml)}};
        if (!x1.empty()) out[p + "1"] = std::move(x1);
        if (!x2.empty()) out[p + "2"] = std::move(x2);
        if (!x3.empty()) out[p + "3"] = std::move(x3);
        return out;
    };
    NodePtr m6 = meas("6", "E", {Et[0]}, {{T{{"E", {0}}}}}, {sub({"H_5"}), sub({"H_7"})});
    NodePtr m5 = meas("5", "D", Dt,
                      {{t("D", levels(1, t4), "v", {1}, {1}, {0})},
                       {t("D", levels(1, t4), "v", {1}, {0}, {1})},
                       {t("D", {0}, "v", {}, {}, {1})},
                       {t("D", {0}, "v", {}, {1}, {0})}},
                      {sub({"H_10"}), sub({"H_8"}), sub({"H_1"}), sub({"H_2"}), m6});
    NodePtr m4 = meas("4", "E", Et,
                      {{t("E", levels(0, t5), "e", {1}, {0}, {0})},
                       {t("E", {1}, "e", {1}, {0}, {1})},
                       {t("E", levels(1, t5), "e", {0}, {1}, {1})},
                       {t("E", levels(1, t5), "e", {0}, {0}, {})}},
                      {sub({"H_3"}), sub({"H_6"}), sub({"H_9"}), sub({"H_4"}), m5});
    NodePtr body = split_chain(d, {{"A", "a", "v1", "e1"}, {"B", "b", "v2", "e2"}, {"C", "c", "v3", "e3"}}, 0, m4);
    NodePtr root = attach(ghz3({"A", "a"}, {"D", "v1"}, {"E", "e1"}),
                          attach(ghz3({"B", "b"}, {"D", "v2"}, {"E", "e2"}),
                                 attach(ghz3({"C", "c"}, {"D", "v3"}, {"E", "e3"}), body)));
    return {"thm9", SystemLayout::lettered(d), root, {}, {}};
}

ProtocolTree thm10(const std::vector<int> &d) {
    const int t4 = d[3] - 1, t5 = d[4] - 1;
    const std::vector<WireSpec> Et{{"E", d[4]}, {"e1", 2}, {"e2", 2}};
    const std::vector<WireSpec> Dt{{"D", d[3]}, {"v1", 2}, {"v2", 2}};
    const std::vector<WireSpec> Ct{{"C", d[2]}, {"c1", 2}, {"c2", 2}};
    NodePtr m7 = meas("7", "D", Dt, {{T{{"D", {0}}}}}, {sub({"H_1"}), sub({"H_8"})});
    NodePtr m6 = meas("6", "E", Et,
                      {{T{{"E", levels(1, t5)}, {"e1", {1}}, {"e2", {0}}}},
                       {T{{"E", levels(1, t5)}, {"e1", {0}}, {"e2", {1}}}}},
                      {sub({"H_6"}), sub({"H_9"}), m7});
    NodePtr m5 = meas("5", "C", Ct,
                      {{T{{"C", {0}}, {"c2", {1}}}}, {T{{"C", {0}}, {"c1", {1}}, {"c2", {0}}}}},
                      {sub({"H_2"}), sub({"H_3"}), m6});
    NodePtr m4 = meas("4", "D", Dt,
                      {{T{{"D", levels(1, t4)}, {"v1", {0}}}}, {T{{"D", levels(1, t4)}, {"v1", {1}}, {"v2", {1}}}}},
                      {sub({"H_5", "H_7"}), sub({"H_10"}), m5});
    NodePtr m3 = meas("3", "E", Et, {{T{{"E", levels(1, t5)}, {"e1", {0}}, {"e2", {0}}}}}, {sub({"H_4"}), m4});
    NodePtr body = split_chain(d, {{"A", "a", "c1", "v1", "e1"}, {"B", "b", "c2", "v2", "e2"}}, 0, m3);
    NodePtr root = attach(f4({"A", "a"}, {"C", "c1"}, {"D", "v1"}, {"E", "e1"}),
                          attach(f4({"B", "b"}, {"C", "c2"}, {"D", "v2"}, {"E", "e2"}), body));
    return {"thm10", SystemLayout::lettered(d), root, {}, {}};
}

double log2i(int d) {
    return std::log2(static_cast<double>(d));
}

}  // namespace

const std::vector<TheoremInfo> &theorems() {
    static const std::vector<TheoremInfo> registry{
        {1, "ghz4", {2, 2, 2, 2}, "4-qubit GHZ basis with one A-B pair and CNOTs into A"},
        {2, "ghz5", {2, 2, 2, 2, 2}, "5-qubit GHZ basis with one A-B pair and CNOTs into A"},
        {3, "asym4", {3, 3, 3, 3}, "asymmetric set: teleport D to C, one A-C pair"},
        {4, "asym4", {3, 3, 3, 3}, "asymmetric set: A-D qubit pair and C-D qutrit pair"},
        {5, "asym4", {3, 3, 3, 3}, "asymmetric set: A-D and C-D pairs plus a B-D pair on demand"},
        {6, "sym4", {3, 3, 3, 3}, "symmetric set: teleport D to C, one A-C qutrit pair"},
        {7, "sym4", {3, 3, 3, 3}, "symmetric set: A-C pair, A-D qutrit pair, A-B pair on demand"},
        {8, "sym5", {3, 3, 3, 3, 3}, "five-party set: four pairs with E"},
        {9, "sym5", {3, 3, 3, 3, 3}, "five-party set: three GHZ states through D and E"},
        {10, "sym5", {3, 3, 3, 3, 3}, "five-party set: two four-party GHZ states"},
    };
    return registry;
}

const TheoremInfo &theorem_info(int id) {
    if (id < 1 || id > 10) {
        throw DomainError("unknown theorem " + std::to_string(id));
    }
    return theorems()[id - 1];
}

void check_dims(int id, std::span<const int> dims) {
    const auto &info = theorem_info(id);
    if (dims.size() != info.default_dims.size()) {
        throw DomainError("theorem " + std::to_string(id) + " needs " + std::to_string(info.default_dims.size()) +
                          " dimensions");
    }
    for (int d : dims) {
        if (id <= 2 && d != 2) {
            throw DomainError("theorem " + std::to_string(id) + " acts on qubits only");
        }
        if (id > 2 && d < 3) {
            throw DomainError("theorem " + std::to_string(id) + " needs every dimension >= 3");
        }
    }
}

ProtocolTree build(int id, std::span<const int> dims) {
    check_dims(id, dims);
    auto d = owned(dims);
    switch (id) {
        case 1:
            return thm1();
        case 2:
            return thm2();
        case 3:
            return thm3(d);
        case 4:
            return thm4(d);
        case 5:
            return thm5(d);
        case 6:
            return thm6(d);
        case 7:
            return thm7(d);
        case 8:
            return thm8(d);
        case 9:
            return thm9(d);
        default:
            return thm10(d);
    }
}

Ensemble theorem_ensemble(int id, std::span<const int> dims) {
    check_dims(id, dims);
    return make_ensemble(theorem_info(id).ensemble, dims);
}

CostFormulaResult cost_formula_thm5(std::span<const int> dims) {
    if (dims.size() != 4) {
        throw DomainError("cost formula needs four dimensions");
    }
    std::int64_t d[4];
    std::int64_t pairs = 0, sum = 0;
    for (int k = 0; k < 4; k++) {
        d[k] = dims[k];
        sum += d[k];
    }
    for (int i = 0; i < 4; i++) {
        for (int j = i + 1; j < 4; j++) {
            pairs += d[i] * d[j];
        }
    }
    CostFormulaResult out;
    out.s = 2 * (pairs - 2 * sum - d[1] - d[2] + 2);
    out.r = pairs - 4 * sum + d[0] * (d[2] + d[3]) + d[1] - d[2] + 6;
    out.ratio = static_cast<double>(out.r) / static_cast<double>(out.s);
    out.total_ebits = 2.0 + out.ratio;
    return out;
}

CostFormulaResult cost_formula_thm7(std::span<const int> dims) {
    if (dims.size() != 4) {
        throw DomainError("cost formula needs four dimensions");
    }
    std::int64_t d[4];
    std::int64_t pairs = 0, sum = 0;
    for (int k = 0; k < 4; k++) {
        d[k] = dims[k];
        sum += d[k];
    }
    for (int i = 0; i < 4; i++) {
        for (int j = i + 1; j < 4; j++) {
            pairs += d[i] * d[j];
        }
    }
    CostFormulaResult out;
    out.s = -2 * pairs + 3 * sum + d[0] * d[2] * (1 + d[1] + d[3]) + d[1] * d[3] * (1 + d[0] + d[2]) - 4;
    out.r = out.s - (d[0] + d[1] + d[2]) + 3;
    out.ratio = static_cast<double>(out.r) / static_cast<double>(out.s);
    out.total_ebits = 1.0 + out.ratio + log2i(3);
    return out;
}

std::vector<Fig41Row> fig41_data(int d3_lo, int d3_hi, int d4_lo, int d4_hi) {
    if (d3_lo < 3 || d4_lo < 3) {
        throw DomainError("fig41: dimensions start at 3");
    }
    std::vector<Fig41Row> rows;
    for (int d3 = d3_lo; d3 <= d3_hi; d3++) {
        for (int d4 = d4_lo; d4 <= d4_hi; d4++) {
            const int dims[4] = {4, 4, d3, d4};
            rows.push_back({d3, d4, 1.0 + log2i(3), cost_formula_thm5(dims).total_ebits});
        }
    }
    return rows;
}

CostTally theorem_expected_cost(int id, std::span<const int> dims, const EbitValuation &valuation) {
    check_dims(id, dims);
    CostTally t;
    auto pair = [&](int dim, const char *x, const char *y, double copies) {
        t.add(epr(dim, {x, ""}, {y, ""}), copies, valuation);
    };
    switch (id) {
        case 1:
        case 2:
            pair(2, "A", "B", 1.0);
            break;
        case 3:
            pair(dims[3], "D", "C", 1.0);
            pair(2, "A", "C", 1.0);
            break;
        case 4:
            pair(2, "A", "D", 1.0);
            pair(3, "C", "D", 1.0);
            break;
        case 5:
            pair(2, "A", "D", 1.0);
            pair(2, "C", "D", 1.0);
            pair(2, "B", "D", cost_formula_thm5(dims).ratio);
            break;
        case 6:
            pair(dims[3], "D", "C", 1.0);
            pair(3, "A", "C", 1.0);
            break;
        case 7:
            pair(2, "A", "C", 1.0);
            pair(3, "A", "D", 1.0);
            pair(2, "A", "B", cost_formula_thm7(dims).ratio);
            break;
        case 8:
            for (const char *p : {"A", "B", "C", "D"}) {
                pair(2, p, "E", 1.0);
            }
            break;
        case 9:
            for (const char *p : {"A", "B", "C"}) {
                t.add(ghz3({p, ""}, {"D", ""}, {"E", ""}), 1.0, valuation);
            }
            break;
        default:
            t.add(f4({"A", ""}, {"C", ""}, {"D", ""}, {"E", ""}), 1.0, valuation);
            t.add(f4({"B", ""}, {"C", ""}, {"D", ""}, {"E", ""}), 1.0, valuation);
            break;
    }
    return t;
}

CostComparison compare_costs(const CostTally &declared, const CostTally &simulated, double tol) {
    CostComparison out;
    out.declared_ebits = declared.ebits;
    out.simulated_ebits = simulated.ebits;
    std::set<std::string> keys;
    for (const auto &[k, _] : declared.entries) {
        keys.insert(k);
    }
    for (const auto &[k, _] : simulated.entries) {
        keys.insert(k);
    }
    char buf[160];
    for (const auto &k : keys) {
        double want = declared.copies(k);
        double got = simulated.copies(k);
        if (std::abs(want - got) > tol) {
            std::snprintf(buf, sizeof(buf), "%s: declared %.12g copies, simulated %.12g", k.c_str(), want, got);
            out.discrepancies.emplace_back(buf);
        }
    }
    if (std::abs(declared.ebits - simulated.ebits) > tol) {
        std::snprintf(buf, sizeof(buf), "total: declared %.12g ebits, simulated %.12g", declared.ebits,
                      simulated.ebits);
        out.discrepancies.emplace_back(buf);
    }
    out.match = out.discrepancies.empty();
    return out;
}

}  // namespace locc
