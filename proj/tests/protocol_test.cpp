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

#include <cmath>

#include "gtest/gtest.h"
#include "locc/catalog.hpp"
#include "tree_walk.hpp"

using namespace locc;

namespace {

bool has_issue(const ValidationReport &r, const std::string &kind) {
    for (const auto &i : r.issues) {
        if (i.kind == kind) {
            return true;
        }
    }
    return false;
}

ProtocolTree qutrit_pair_tree(NodePtr root) {
    std::vector<int> dims{3, 3};
    return ProtocolTree{"toy", SystemLayout::lettered(dims), std::move(root), {}, {}};
}

Measurement by_level(const std::string &party, std::vector<std::string> wires, int dim) {
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
        out.push_back(identified("x" + std::to_string(k)));
    }
    return out;
}

}  // namespace

TEST(protocol, well_formed_toy_tree_validates) {
    auto m = by_level("B", {"b"}, 2);
    auto root = attach(epr(2, {"A", "a"}, {"B", "b"}), measure(m, leaves(2)));
    auto r = validate(qutrit_pair_tree(root));
    EXPECT_TRUE(r.ok()) << (r.issues.empty() ? "" : r.issues.front().message);
}

TEST(protocol, mutation_dropped_outcome) {
    auto m = by_level("A", {"A"}, 3);
    m.outcomes.pop_back();
    auto r = validate(qutrit_pair_tree(measure(m, leaves(2))));
    EXPECT_TRUE(has_issue(r, "incomplete"));
}

TEST(protocol, mutation_cross_party_term) {
    auto m = by_level("A", {"A", "B"}, 3);
    auto r = validate(qutrit_pair_tree(measure(m, leaves(3))));
    EXPECT_TRUE(has_issue(r, "locality"));
}

TEST(protocol, mutation_premature_ancilla) {
    // Measures the ancilla before the pair that carries it is attached.
    auto m = by_level("A", {"a"}, 2);
    auto root = measure(m, {attach(epr(2, {"A", "a"}, {"B", "b"}), identified("x")), identified("y")});
    auto r = validate(qutrit_pair_tree(root));
    EXPECT_TRUE(has_issue(r, "unattached-wire"));
}

TEST(protocol, mutation_on_catalog_tree_is_caught) {
    // Drop the last outcome of the first measurement of a real catalog tree.
    std::vector<int> dims{3, 3, 3, 3};
    auto p = build(4, dims);
    NodePtr node = p.root;
    std::vector<AttachStep> chain;
    while (auto *a = std::get_if<AttachStep>(&node->step)) {
        chain.push_back(*a);
        node = a->next;
    }
    auto step = std::get<MeasureStep>(node->step);
    step.measurement.outcomes.pop_back();
    step.children.pop_back();
    NodePtr cut = std::make_shared<const Node>(Node{step, node->annotation});
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        cut = attach(it->resource, cut);
    }
    p.root = cut;
    EXPECT_TRUE(has_issue(validate(p), "incomplete"));
}

TEST(protocol, other_structural_errors) {
    auto two = [](NodePtr root) {
        std::vector<int> dims{2, 2};
        return ProtocolTree{"q", SystemLayout::lettered(dims), std::move(root), {}, {}};
    };
    EXPECT_TRUE(has_issue(validate(two(cnot("A", "A", identified("x")))), "malformed-cnot"));
    EXPECT_TRUE(has_issue(validate(qutrit_pair_tree(cnot("A", "B", identified("x")))), "non-qubit-cnot"));
    EXPECT_TRUE(has_issue(validate(two(attach(epr(2, {"A", "a"}, {"A", "b"}), identified("x")))),
                          "malformed-resource"));
    EXPECT_TRUE(has_issue(validate(two(teleport("A", "A", 2, identified("x")))), "teleport-self"));
    EXPECT_TRUE(has_issue(validate(two(teleport("A", "B", 3, identified("x")))), "malformed-teleport"));
    auto m = by_level("A", {"A"}, 2);
    EXPECT_TRUE(has_issue(validate(two(measure(m, leaves(1)))), "missing-child"));
    m.outcomes.push_back(m.outcomes.front());
    m.outcomes.back().label = "again";
    EXPECT_TRUE(has_issue(validate(two(measure(m, leaves(3)))), "overlap"));
}

TEST(protocol, make_measurement_complement_completes) {
    auto m = make_measurement("A", {{"A", 4}, {"a", 2}},
                              {{"M_1", {TermSpec{{"A", {0}}}}}, {"M_2", {TermSpec{{"A", {1, 2}}, {"a", {1}}}}}},
                              "M_3");
    ASSERT_EQ(m.outcomes.size(), 3u);
    ProtocolTree p{"c", SystemLayout::lettered(std::vector<int>{4, 2}), nullptr, {}, {}};
    p.root = attach(epr(2, {"A", "a"}, {"B", "b"}), measure(m, leaves(3)));
    EXPECT_TRUE(validate(p).ok());
    auto audit = locc_test::audit_measurements(p);
    EXPECT_EQ(audit.max_completeness_error, 0.0);
}

TEST(protocol, make_measurement_rejects_overlapping_outcomes) {
    EXPECT_THROW(make_measurement("A", {{"A", 3}},
                                  {{"M_1", {TermSpec{{"A", {0, 1}}}}}, {"M_2", {TermSpec{{"A", {1, 2}}}}}}),
                 StructuralError);
}

TEST(protocol, relabel_subtree_shifts_levels) {
    auto m = make_measurement("B", {{"b", 3}}, {{"M_1", {TermSpec{{"b", {0}}}}}}, "M_2");
    auto node = measure(m, leaves(2));
    auto shifted = relabel_subtree(node, {{"b", 3, 1}});
    const auto &sm = std::get<MeasureStep>(shifted->step).measurement;
    EXPECT_EQ(sm.outcomes[0].projector.terms[0][0], std::vector<int>{1});
    // Shifting touches only projectors.
    EXPECT_THROW(relabel_subtree(cnot("b", "x", identified("x")), {{"b", 3, 1}}), StructuralError);
}

TEST(protocol, resource_keys_and_ebits) {
    EXPECT_EQ(epr(3, {"D", "v"}, {"C", "c"}).key(), "EPR(3)@C,D");
    EXPECT_NEAR(ebits(epr(3, {"D", "v"}, {"C", "c"})), std::log2(3.0), 1e-15);
    EXPECT_EQ(ghz3({"A", "x"}, {"D", "y"}, {"E", "z"}).key(), "GHZ3@A,D,E");
    EXPECT_EQ(f4({"E", "p"}, {"A", "q"}, {"C", "r"}, {"D", "s"}).key(), "F4@A,C,D,E");
    EbitValuation v{1.5, 2.0};
    EXPECT_EQ(ebits(ghz3({"A", "x"}, {"D", "y"}, {"E", "z"}), v), 1.5);
}

TEST(protocol, resource_states_are_normalized) {
    for (const auto &r : {epr(2, {"A", "a"}, {"B", "b"}), epr(5, {"A", "a"}, {"B", "b"}),
                          ghz3({"A", "a"}, {"B", "b"}, {"C", "c"}),
                          f4({"A", "a"}, {"B", "b"}, {"C", "c"}, {"D", "d"})}) {
        auto s = build_resource_state(r);
        EXPECT_NEAR(norm(s), 1.0, 1e-15);
        EXPECT_FALSE(factorize(s).has_value());
    }
}

TEST(protocol, cost_tally_accumulates) {
    CostTally t;
    t.add(epr(2, {"A", "a"}, {"B", "b"}), 1.0);
    t.add(epr(3, {"C", "c"}, {"D", "d"}), 0.5);
    EXPECT_NEAR(t.ebits, 1.0 + 0.5 * std::log2(3.0), 1e-15);
    CostTally u;
    u.add(t, 0.25);
    EXPECT_NEAR(u.copies("EPR(3)@C,D"), 0.125, 1e-15);
    EXPECT_EQ(u.copies("EPR(2)@A,D"), 0.0);
}

TEST(protocol, catalog_trees_validate_and_measurements_are_local_and_complete) {
    for (const auto &info : theorems()) {
        std::vector<std::vector<int>> all{info.default_dims};
        if (info.id >= 3 && info.id <= 7) {
            all.push_back({3, 4, 5, 6});
        }
        for (const auto &dims : all) {
            auto p = build(info.id, dims);
            auto r = validate(p);
            EXPECT_TRUE(r.ok()) << "theorem " << info.id << ": " << (r.ok() ? "" : r.issues.front().message);
            auto a = locc_test::audit_measurements(p);
            EXPECT_GT(a.measurements, 0u);
            EXPECT_LE(a.max_completeness_error, 1e-12) << "theorem " << info.id;
            EXPECT_TRUE(a.nonlocal.empty()) << "theorem " << info.id;
        }
    }
}
