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

#include "locc/qstate.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace locc;

namespace {

SystemLayout two_qutrits() {
    std::vector<int> dims{3, 3};
    return SystemLayout::lettered(dims);
}

SparseState bell(int d) {
    std::vector<int> dims{d, d};
    auto layout = SystemLayout::lettered(dims);
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    for (int k = 0; k < d; k++) {
        std::vector<int> lv{k, k};
        entries.emplace_back(layout.encode(lv), 1.0 / std::sqrt(d));
    }
    return SparseState::from_entries(layout, entries);
}

}  // namespace

TEST(layout, mixed_radix_round_trip) {
    std::vector<int> dims{3, 4, 5, 6};
    auto layout = SystemLayout::lettered(dims);
    ASSERT_EQ(layout.space_size(), 360);
    for (LinearIndex k = 0; k < layout.space_size(); k++) {
        auto lv = layout.decode(k);
        ASSERT_EQ(layout.encode(lv), k);
    }
    // First wire is most significant.
    std::vector<int> lv{1, 0, 0, 0};
    EXPECT_EQ(layout.encode(lv), 120);
}

TEST(layout, ancilla_and_move) {
    std::vector<int> dims{3, 3, 3, 3};
    auto layout = SystemLayout::lettered(dims).with_ancilla("C", {"c", 2, true});
    EXPECT_EQ(layout.wire_count(), 5u);
    EXPECT_EQ(layout.party_wires(layout.party_position("C")).size(), 2u);
    EXPECT_THROW(layout.with_ancilla("Q", {"q", 2, true}), StructuralError);
    EXPECT_THROW(layout.with_ancilla("C", {"c", 2, true}), StructuralError);

    auto moved = SystemLayout::lettered(dims).with_wire_moved("D", "C");
    auto c = moved.party_position("C");
    ASSERT_EQ(moved.party_wires(c).size(), 2u);
    EXPECT_EQ(moved.wire(moved.party_wires(c)[1]).name, "D");
}

TEST(qstate, inner_product_and_norm) {
    auto layout = two_qutrits();
    std::vector<int> a{0, 1}, b{2, 2};
    auto x = SparseState::basis(layout, a);
    auto y = SparseState::basis(layout, b);
    EXPECT_EQ(inner_product(x, y), Amplitude(0.0));
    EXPECT_NEAR(norm(add(x, y)), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(inner_product(normalize(add(x, y)), x)), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(normalize(SparseState(layout, AmplitudeVector(layout.space_size()))), DegenerateInputError);
}

TEST(qstate, root_of_unity_exact_at_multiples) {
    for (int d = 1; d <= 12; d++) {
        for (long long k = -2 * d; k <= 2 * d; k++) {
            Amplitude w = root_of_unity(d, k);
            double angle = 2 * std::numbers::pi * static_cast<double>(k) / d;
            EXPECT_NEAR(w.real(), std::cos(angle), 1e-14);
            EXPECT_NEAR(w.imag(), std::sin(angle), 1e-14);
            if (k % d == 0) {
                EXPECT_EQ(w, Amplitude(1.0));
            }
        }
    }
}

// Within a family the vectors are mutually orthogonal; across families they overlap as the supports dictate.
TEST(qstate, fourier_families_orthogonal_up_to_d8) {
    for (auto kind : {FourierKind::kAlpha, FourierKind::kBeta, FourierKind::kGamma, FourierKind::kKappa}) {
        for (int d = 3; d <= 8; d++) {
            int n = fourier_family_size(kind, d);
            for (int x = 0; x < n; x++) {
                auto u = local_fourier_vector(kind, d, x);
                EXPECT_NEAR(u.squaredNorm(), n, 1e-12);
                for (int y = x + 1; y < n; y++) {
                    auto v = local_fourier_vector(kind, d, y);
                    EXPECT_LT(std::abs(u.dot(v)), 1e-12) << d << " " << x << " " << y;
                }
            }
        }
    }
}

TEST(qstate, fourier_support) {
    // gamma lives on 1..d-1, kappa on 1..d-2, beta on 0..d-2.
    for (int d = 3; d <= 8; d++) {
        EXPECT_EQ(local_fourier_vector(FourierKind::kGamma, d, 0)[0], Amplitude(0.0));
        EXPECT_EQ(local_fourier_vector(FourierKind::kKappa, d, 0)[d - 1], Amplitude(0.0));
        EXPECT_EQ(local_fourier_vector(FourierKind::kBeta, d, 0)[d - 1], Amplitude(0.0));
    }
    EXPECT_THROW(local_fourier_vector(FourierKind::kKappa, 3, 1), DomainError);
    EXPECT_THROW(local_fourier_vector(FourierKind::kAlpha, 3, -1), DomainError);
}

TEST(qstate, cnot_is_an_involution) {
    std::vector<int> dims{2, 2, 2, 2};
    auto layout = SystemLayout::lettered(dims);
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    for (LinearIndex k = 0; k < layout.space_size(); k++) {
        entries.emplace_back(k, Amplitude(std::cos(0.3 * k), std::sin(0.7 * k)));
    }
    auto s = normalize(SparseState::from_entries(layout, entries));
    const char *pairs[][2] = {{"A", "B"}, {"C", "A"}, {"D", "A"}, {"B", "D"}};
    for (auto &p : pairs) {
        auto once = apply_cnot(s, p[0], p[1]);
        auto twice = apply_cnot(once, p[0], p[1]);
        EXPECT_NEAR(std::abs(inner_product(twice, s)), 1.0, 1e-14);
        EXPECT_NEAR(norm(once), 1.0, 1e-14);
    }
    std::vector<int> a{1, 0, 1, 1};
    std::vector<int> b{1, 1, 1, 1};
    EXPECT_NEAR(std::abs(inner_product(apply_cnot(SparseState::basis(layout, a), "A", "B"),
                                       SparseState::basis(layout, b))),
                1.0, 1e-15);
    EXPECT_THROW(apply_cnot(s, "A", "A"), StructuralError);
    EXPECT_THROW(apply_cnot(bell(3), "A", "B"), StructuralError);
}

TEST(qstate, projector_idempotent_and_complete) {
    auto s = bell(3);
    Projector low{{"A"}, {{{0, 1}}}};
    Projector high{{"A"}, {{{2}}}};
    auto once = apply_projector(low, s);
    auto twice = apply_projector(low, once.state);
    EXPECT_NEAR(once.probability, 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(norm(twice.state), norm(once.state), 1e-15);
    EXPECT_NEAR(std::abs(inner_product(twice.state, once.state)), norm(once.state) * norm(once.state), 1e-15);
    auto rest = apply_projector(high, s);
    EXPECT_NEAR(once.probability + rest.probability, 1.0, 1e-14);
    EXPECT_EQ(std::abs(inner_product(once.state, rest.state)), 0.0);
}

TEST(qstate, tensor_and_extend) {
    auto e = bell(2);
    std::vector<int> dims{3};
    auto solo = SparseState::basis(SystemLayout::main_only(std::vector<std::string>{"C"}, dims), std::vector<int>{2});
    auto t = tensor(e, solo);
    EXPECT_EQ(t.layout().party_count(), 3u);
    EXPECT_NEAR(norm(t), 1.0, 1e-15);
    EXPECT_THROW(tensor(e, e), StructuralError);
}

TEST(qstate, factorize_detects_products) {
    std::vector<int> dims{3, 4};
    auto layout = SystemLayout::lettered(dims);
    std::vector<LocalVector> factors{local_fourier_vector(FourierKind::kAlpha, 3, 1),
                                     local_fourier_vector(FourierKind::kGamma, 4, 2)};
    auto p = product_state(layout, factors);
    auto f = factorize(p);
    ASSERT_TRUE(f.has_value());
    EXPECT_NEAR(std::abs(f->at(0).normalized().dot(factors[0].normalized())), 1.0, 1e-12);
    EXPECT_FALSE(factorize(bell(3)).has_value());
}

TEST(qstate, contract_wire_drops_it) {
    auto s = bell(3);
    auto bra = basis_vector(3, 1);
    auto r = contract_wire(s, "B", bra);
    EXPECT_EQ(r.layout().wire_count(), 1u);
    EXPECT_NEAR(norm(r), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(qstate, relayout_preserves_amplitudes) {
    std::vector<int> dims{2, 3, 2};
    auto layout = SystemLayout::lettered(dims);
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    for (LinearIndex k = 0; k < layout.space_size(); k += 2) {
        entries.emplace_back(k, Amplitude(k + 1.0, 0.5));
    }
    auto s = SparseState::from_entries(layout, entries);
    auto moved = relayout(s, layout.with_wire_moved("C", "A"));
    EXPECT_EQ(moved.term_count(), s.term_count());
    EXPECT_NEAR(norm(moved), norm(s), 1e-12);
    auto back = relayout(moved, layout);
    EXPECT_NEAR(std::abs(inner_product(back, s)), norm(s) * norm(s), 1e-9);
}
