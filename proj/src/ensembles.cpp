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

#include "locc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace locc {

namespace {

using IndexValues = std::map<std::string, int>;

/// One party's factor within a family: a recipe for the local vector and the indices it consumes.
struct Factor {
    std::function<LocalVector(int d, const IndexValues &)> make;
    /// (index name, allowed values at this party's dimension)
    std::function<std::vector<std::pair<std::string, std::vector<int>>>(int d)> ranges;
};

int resolve(int level, int d) {
    return level < 0 ? d + level : level;
}

std::vector<int> iota_values(int lo, int hi) {
    std::vector<int> out;
    for (int v = lo; v < hi; v++) {
        out.push_back(v);
    }
    return out;
}

/// |level>, with negative levels counted from the top (-1 is d-1).
Factor ket(int level) {
    return Factor{[level](int d, const IndexValues &) { return basis_vector(d, resolve(level, d)); },
                  [](int) { return std::vector<std::pair<std::string, std::vector<int>>>{}; }};
}

Factor fourier(FourierKind kind, std::string index) {
    return Factor{[kind, index](int d, const IndexValues &v) { return local_fourier_vector(kind, d, v.at(index)); },
                  [kind, index](int d) {
                      return std::vector<std::pair<std::string, std::vector<int>>>{
                          {index, iota_values(0, fourier_family_size(kind, d))}};
                  }};
}

/// |0> + sign |d-1>.
Factor plus_minus() {
    return Factor{[](int d, const IndexValues &v) {
                      LocalVector out = basis_vector(d, 0);
                      out[d - 1] = static_cast<double>(v.at("sign"));
                      return out;
                  },
                  [](int) { return std::vector<std::pair<std::string, std::vector<int>>>{{"sign", {1, -1}}}; }};
}

/// |p> for p in 1..d-1.
Factor level_index() {
    return Factor{[](int d, const IndexValues &v) { return basis_vector(d, v.at("p")); },
                  [](int d) { return std::vector<std::pair<std::string, std::vector<int>>>{{"p", iota_values(1, d)}}; }};
}

Factor alpha(std::string i = "i") {
    return fourier(FourierKind::kAlpha, std::move(i));
}
Factor beta(std::string j = "j") {
    return fourier(FourierKind::kBeta, std::move(j));
}
Factor gamma(std::string m = "m") {
    return fourier(FourierKind::kGamma, std::move(m));
}
Factor kappa(std::string index = "I") {
    return fourier(FourierKind::kKappa, std::move(index));
}

struct FamilySpec {
    std::string tag;
    std::vector<Factor> factors;
};

/// Expands each family over the joint index ranges. An index shared by several parties ranges over
/// the values legal at all of them.
Ensemble expand(std::string name, std::span<const int> dims, const std::vector<FamilySpec> &specs) {
    Ensemble e;
    e.name = std::move(name);
    e.layout = SystemLayout::lettered(dims);
    for (const auto &spec : specs) {
        std::vector<std::string> order;
        std::map<std::string, std::vector<int>> values;
        for (std::size_t k = 0; k < spec.factors.size(); k++) {
            for (auto &[index, allowed] : spec.factors[k].ranges(dims[k])) {
                auto it = values.find(index);
                if (it == values.end()) {
                    order.push_back(index);
                    values[index] = allowed;
                } else {
                    std::vector<int> both;
                    std::set_intersection(it->second.begin(), it->second.end(), allowed.begin(), allowed.end(),
                                          std::back_inserter(both));
                    it->second = both;
                }
            }
        }
        std::vector<std::string> labels;
        std::vector<std::size_t> cursor(order.size(), 0);
        bool empty = std::any_of(order.begin(), order.end(), [&](const auto &ix) { return values[ix].empty(); });
        while (!empty) {
            IndexValues current;
            Label label{spec.tag, {}};
            for (std::size_t k = 0; k < order.size(); k++) {
                int v = values[order[k]][cursor[k]];
                current[order[k]] = v;
                label.indices.emplace_back(order[k], v);
            }
            std::vector<LocalVector> local;
            for (std::size_t k = 0; k < spec.factors.size(); k++) {
                local.push_back(spec.factors[k].make(dims[k], current));
            }
            labels.push_back(label.str());
            e.members.push_back({std::move(label), normalize(product_state(e.layout, local))});
            // Odometer with the last index fastest.
            std::size_t k = order.size();
            while (k > 0) {
                k--;
                if (++cursor[k] < values[order[k]].size()) {
                    break;
                }
                cursor[k] = 0;
                if (k == 0) {
                    empty = true;
                }
            }
            if (order.empty()) {
                break;
            }
        }
        e.families.emplace_back(spec.tag, std::move(labels));
    }
    return e;
}

void require_dims(std::span<const int> dims, std::size_t n, const char *name) {
    if (dims.size() != n) {
        throw DomainError(std::string(name) + ": expected " + std::to_string(n) + " dimensions");
    }
    for (int d : dims) {
        if (d < 3) {
            throw DomainError(std::string(name) + ": every local dimension must be at least 3");
        }
    }
}

}  // namespace

std::string Label::str() const {
    std::string out = family;
    if (indices.empty()) {
        return out;
    }
    out += "(";
    for (std::size_t k = 0; k < indices.size(); k++) {
        if (k) {
            out += ",";
        }
        out += indices[k].first + "=";
        if (indices[k].first == "sign") {
            out += indices[k].second > 0 ? "+1" : "-1";
        } else {
            out += std::to_string(indices[k].second);
        }
    }
    return out + ")";
}

std::size_t Ensemble::index_of(const std::string &label) const {
    for (std::size_t k = 0; k < members.size(); k++) {
        if (members[k].label.str() == label) {
            return k;
        }
    }
    throw DomainError("ensemble '" + name + "' has no member " + label);
}

const std::vector<std::string> &Ensemble::family(const std::string &tag) const {
    for (const auto &[t, labels] : families) {
        if (t == tag) {
            return labels;
        }
    }
    throw DomainError("ensemble '" + name + "' has no family " + tag);
}

std::vector<int> ghz_pattern(int n, int i) {
    if (n == 4) {
        // Member order of the four-qubit basis; bits for parties B, C, D.
        static const int kTable[8][3] = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0},
                                         {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
        if (i < 0 || i >= 8) {
            throw DomainError("ghz_pattern: index out of range");
        }
        return {kTable[i][0], kTable[i][1], kTable[i][2]};
    }
    if (n == 5) {
        if (i < 0 || i >= 16) {
            throw DomainError("ghz_pattern: index out of range");
        }
        return {(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1};
    }
    throw DomainError("ghz_basis: only n = 4 and n = 5 are supported");
}

Ensemble ghz_basis(int n) {
    if (n != 4 && n != 5) {
        throw DomainError("ghz_basis: only n = 4 and n = 5 are supported");
    }
    Ensemble e;
    e.name = n == 4 ? "ghz4" : "ghz5";
    std::vector<int> dims(n, 2);
    e.layout = SystemLayout::lettered(dims);
    std::string tag = n == 4 ? "psi" : "phi";
    std::vector<std::string> labels;
    for (int i = 0; i < (1 << (n - 1)); i++) {
        std::vector<int> first{0};
        for (int b : ghz_pattern(n, i)) {
            first.push_back(b);
        }
        std::vector<int> second(first);
        for (int &b : second) {
            b ^= 1;
        }
        for (int sign : {1, -1}) {
            std::vector<std::pair<BasisIndex, Amplitude>> terms{{first, 1.0}, {second, static_cast<double>(sign)}};
            Label label{tag, {{"i", i}, {"sign", sign}}};
            labels.push_back(label.str());
            e.members.push_back({std::move(label), normalize(SparseState::from_terms(e.layout, terms))});
        }
    }
    e.families.emplace_back(tag, std::move(labels));
    return e;
}

Ensemble ops_asym4(std::span<const int> dims) {
    require_dims(dims, 4, "ops_asym4");
    const int top = -1;
    std::vector<FamilySpec> specs = {
        {"H_1", {ket(0), ket(0), beta(), alpha()}},
        {"H_2", {ket(0), ket(0), ket(top), beta()}},
        {"H_3", {beta(), alpha(), ket(top), ket(top)}},
        {"H_4", {ket(top), beta(), ket(top), ket(top)}},
        {"H_5", {ket(top), ket(top), gamma(), alpha()}},
        {"H_6", {ket(top), ket(top), ket(0), gamma()}},
        {"H_7", {gamma(), alpha(), ket(0), ket(0)}},
        {"H_8", {ket(0), gamma(), ket(0), ket(0)}},
        {"H_9", {ket(0), kappa(), ket(0), gamma()}},
        {"H_10", {ket(top), kappa(), ket(top), beta()}},
        {"H_11", {kappa(), ket(top), beta(), ket(top)}},
        {"H_12", {kappa(), ket(0), gamma(), ket(0)}},
        {"H_13", {ket(0), gamma(), kappa(), ket(top)}},
        {"H_14", {ket(top), beta(), kappa(), ket(0)}},
        {"H_15", {kappa(), ket(top), ket(top), beta()}},
        {"H_16", {kappa(), ket(0), ket(0), gamma()}},
        {"H_17", {ket(0), ket(top), plus_minus(), kappa()}},
        {"H_18", {ket(top), ket(0), plus_minus(), kappa()}},
    };
    return expand("asym4", dims, specs);
}

Ensemble ops_sym4(std::span<const int> dims) {
    require_dims(dims, 4, "ops_sym4");
    const int top = -1;
    // Two κ factors in one member carry independent indices, named after their party.
    std::vector<FamilySpec> specs = {
        {"H_{1,1}", {kappa("I1"), kappa("I2"), ket(0), gamma()}},
        {"H_{1,2}", {kappa("I1"), ket(0), gamma(), kappa("I4")}},
        {"H_{1,3}", {ket(0), gamma(), kappa("I3"), kappa("I4")}},
        {"H_{1,4}", {gamma(), kappa("I2"), kappa("I3"), ket(0)}},
        {"H_{2,1}", {ket(top), ket(0), ket(0), beta()}},
        {"H_{2,2}", {ket(0), ket(0), beta(), ket(top)}},
        {"H_{2,3}", {ket(0), beta(), ket(top), ket(0)}},
        {"H_{2,4}", {beta(), ket(top), ket(0), ket(0)}},
        {"H_{3,1}", {ket(0), ket(0), ket(top), gamma()}},
        {"H_{3,2}", {ket(0), ket(top), gamma(), ket(0)}},
        {"H_{3,3}", {ket(top), gamma(), ket(0), ket(0)}},
        {"H_{3,4}", {gamma(), ket(0), ket(0), ket(top)}},
        {"H_{4,1}", {kappa(), ket(top), ket(top), plus_minus()}},
        {"H_{4,2}", {ket(top), ket(top), plus_minus(), kappa()}},
        {"H_{4,3}", {ket(top), plus_minus(), kappa(), ket(top)}},
        {"H_{4,4}", {plus_minus(), kappa(), ket(top), ket(top)}},
        {"H_{5,1}", {ket(top), ket(top), kappa(), beta()}},
        {"H_{5,2}", {ket(top), kappa(), beta(), ket(top)}},
        {"H_{5,3}", {kappa(), beta(), ket(top), ket(top)}},
        {"H_{5,4}", {beta(), ket(top), ket(top), kappa()}},
        {"H_{6,1}", {ket(0), ket(top), ket(top), ket(top)}},
        {"H_{6,2}", {ket(top), ket(top), ket(top), ket(0)}},
        {"H_{6,3}", {ket(top), ket(top), ket(0), ket(top)}},
        {"H_{6,4}", {ket(top), ket(0), ket(top), ket(top)}},
        {"H_{7,1}", {ket(0), kappa("I2"), ket(top), kappa("I4")}},
        {"H_{7,2}", {kappa("I1"), ket(top), kappa("I3"), ket(0)}},
        {"H_{7,3}", {ket(top), kappa("I2"), ket(0), kappa("I4")}},
        {"H_{7,4}", {kappa("I1"), ket(0), kappa("I3"), ket(top)}},
        {"H_{8,1}", {ket(top), kappa("I2"), ket(top), kappa("I4")}},
        {"H_{8,2}", {kappa("I1"), ket(top), kappa("I3"), ket(top)}},
    };
    return expand("sym4", dims, specs);
}

Ensemble ops_sym5(std::span<const int> dims) {
    require_dims(dims, 5, "ops_sym5");
    std::vector<FamilySpec> specs = {
        {"H_1", {alpha(), alpha(), level_index(), ket(0), ket(0)}},
        {"H_2", {alpha(), level_index(), ket(0), ket(0), alpha()}},
        {"H_3", {level_index(), ket(0), ket(0), alpha(), alpha()}},
        {"H_4", {ket(0), ket(0), alpha(), alpha(), level_index()}},
        {"H_5", {ket(0), alpha(), alpha(), level_index(), ket(0)}},
        {"H_6", {gamma(), ket(0), level_index(), ket(0), ket(1)}},
        {"H_7", {ket(0), level_index(), ket(0), ket(1), gamma()}},
        {"H_8", {level_index(), ket(0), ket(1), gamma(), ket(0)}},
        {"H_9", {ket(0), ket(1), gamma(), ket(0), level_index()}},
        {"H_10", {ket(1), gamma(), ket(0), level_index(), ket(0)}},
    };
    return expand("sym5", dims, specs);
}

Ensemble make_ensemble(const std::string &kind, std::span<const int> dims) {
    if (kind == "ghz4" || kind == "ghz5") {
        int n = kind == "ghz4" ? 4 : 5;
        if (!dims.empty() && (dims.size() != static_cast<std::size_t>(n) ||
                              std::any_of(dims.begin(), dims.end(), [](int d) { return d != 2; }))) {
            throw DomainError(kind + ": dimensions must all be 2");
        }
        return ghz_basis(n);
    }
    if (kind == "asym4") {
        return ops_asym4(dims);
    }
    if (kind == "sym4") {
        return ops_sym4(dims);
    }
    if (kind == "sym5") {
        return ops_sym5(dims);
    }
    throw DomainError("unknown ensemble kind '" + kind + "'");
}

OrthogonalityReport check_mutual_orthogonality(const Ensemble &e, double tol) {
    OrthogonalityReport report;
    for (std::size_t x = 0; x < e.members.size(); x++) {
        for (std::size_t y = x + 1; y < e.members.size(); y++) {
            double overlap = std::abs(inner_product(e.members[x].state, e.members[y].state));
            report.max_abs_overlap = std::max(report.max_abs_overlap, overlap);
            if (overlap >= tol) {
                report.violating_pairs.emplace_back(e.members[x].label.str(), e.members[y].label.str());
            }
        }
    }
    return report;
}

}  // namespace locc
