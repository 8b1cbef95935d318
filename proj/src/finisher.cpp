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

#include <numeric>

#include "locc/engine.hpp"

namespace locc {

namespace {

/// factors[member][party], each normalized.
using FactorTable = std::vector<std::vector<LocalVector>>;

std::vector<std::vector<std::size_t>> components(const std::vector<std::size_t> &members, const FactorTable &factors,
                                                 std::size_t party, double tol) {
    std::vector<std::size_t> root(members.size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) {
            x = root[x] = root[root[x]];
        }
        return x;
    };
    for (std::size_t x = 0; x < members.size(); x++) {
        for (std::size_t y = x + 1; y < members.size(); y++) {
            const auto &fx = factors[members[x]][party];
            const auto &fy = factors[members[y]][party];
            if (std::abs(fx.dot(fy)) > tol) {
                root[find(x)] = find(y);
            }
        }
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<int> slot(members.size(), -1);
    for (std::size_t x = 0; x < members.size(); x++) {
        std::size_t r = find(x);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(members[x]);
    }
    return out;
}

Eigen::MatrixXcd span_basis(const std::vector<std::size_t> &group, const FactorTable &factors, std::size_t party) {
    Eigen::Index dim = factors[group.front()][party].size();
    Eigen::MatrixXcd columns(dim, static_cast<Eigen::Index>(group.size()));
    for (std::size_t k = 0; k < group.size(); k++) {
        columns.col(static_cast<Eigen::Index>(k)) = factors[group[k]][party];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(columns);
    qr.setThreshold(1e-10);
    Eigen::MatrixXcd q = qr.householderQ();
    return q.leftCols(qr.rank());
}

/// Splits at the first party whose factors fall into several mutually orthogonal groups, then recurses.
bool build(PlanNode &node, const FactorTable &factors, const SystemLayout &layout, double tol,
           std::vector<std::size_t> &stuck) {
    if (node.members.size() <= 1) {
        return true;
    }
    for (std::size_t p = 0; p < layout.party_count(); p++) {
        auto groups = components(node.members, factors, p, tol);
        if (groups.size() < 2) {
            continue;
        }
        node.party = layout.parties()[p].name;
        for (auto &g : groups) {
            node.subspaces.push_back(span_basis(g, factors, p));
            PlanNode child;
            child.members = std::move(g);
            node.children.push_back(std::move(child));
        }
        for (auto &child : node.children) {
            if (!build(child, factors, layout, tol, stuck)) {
                return false;
            }
        }
        return true;
    }
    stuck = node.members;
    return false;
}

std::optional<FactorTable> factor_all(const std::vector<LabeledState> &subset, std::size_t *bad) {
    FactorTable table;
    for (std::size_t k = 0; k < subset.size(); k++) {
        auto f = factorize(subset[k].state);
        if (!f) {
            *bad = k;
            return std::nullopt;
        }
        for (auto &v : *f) {
            v.normalize();
        }
        table.push_back(std::move(*f));
    }
    return table;
}

std::optional<std::size_t> land(const PlanNode &node, const std::vector<LocalVector> &factors,
                                const SystemLayout &layout, double tol, std::size_t &counter) {
    if (node.children.empty()) {
        return counter++;
    }
    const auto &f = factors[layout.party_position(node.party)];
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < node.children.size(); k++) {
        double p = (node.subspaces[k].adjoint() * f).squaredNorm();
        if (p > 1.0 - tol) {
            hit = land(node.children[k], factors, layout, tol, counter);
        } else {
            if (p > tol) {
                return std::nullopt;
            }
            // Keep leaf numbering stable across members.
            std::vector<const PlanNode *> stack{&node.children[k]};
            while (!stack.empty()) {
                const PlanNode *n = stack.back();
                stack.pop_back();
                if (n->children.empty()) {
                    counter++;
                }
                for (const auto &c : n->children) {
                    stack.push_back(&c);
                }
            }
        }
    }
    return hit;
}

}  // namespace

FinisherResult product_finisher(const std::vector<LabeledState> &subset, double tol) {
    FinisherResult result;
    for (std::size_t k = 0; k < subset.size(); k++) {
        result.plan.members.push_back(k);
        if (!(subset[k].state.layout() == subset.front().state.layout())) {
            throw StructuralError("product_finisher: members live on different layouts");
        }
    }
    if (subset.size() <= 1) {
        result.accepted = true;
        return result;
    }
    std::size_t bad = 0;
    auto factors = factor_all(subset, &bad);
    if (!factors) {
        result.refusal = subset[bad].label.str() + " is not a product state";
        result.offending = std::make_pair(subset[bad].label.str(), subset[bad].label.str());
        return result;
    }
    std::vector<std::size_t> stuck;
    if (!build(result.plan, *factors, subset.front().state.layout(), tol, stuck)) {
        std::string names;
        for (std::size_t k = 0; k < stuck.size(); k++) {
            names += (k ? ", " : "") + subset[stuck[k]].label.str();
        }
        result.refusal = "no party separates {" + names + "}";
        result.offending = std::make_pair(subset[stuck[0]].label.str(), subset[stuck[1]].label.str());
        return result;
    }
    result.accepted = true;
    return result;
}

std::vector<std::optional<std::size_t>> simulate_plan(const FinisherResult &result,
                                                      const std::vector<LabeledState> &subset, double tol) {
    std::vector<std::optional<std::size_t>> out;
    std::size_t bad = 0;
    auto factors = factor_all(subset, &bad);
    for (std::size_t k = 0; k < subset.size(); k++) {
        if (!factors || !result.accepted) {
            out.push_back(std::nullopt);
            continue;
        }
        std::size_t counter = 0;
        out.push_back(land(result.plan, (*factors)[k], subset[k].state.layout(), tol, counter));
    }
    return out;
}

}  // namespace locc
