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

#ifndef LOCC_ENSEMBLES_HPP
#define LOCC_ENSEMBLES_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locc/qstate.hpp"

namespace locc {

/// Family tag plus named indices in a fixed order, e.g. H_3(j=1,i=2) or psi(i=5,sign=+1).
struct Label {
    std::string family;
    std::vector<std::pair<std::string, int>> indices;

    std::string str() const;
    bool operator==(const Label &) const = default;
};

struct LabeledState {
    Label label;
    SparseState state;
};

struct Ensemble {
    std::string name;
    SystemLayout layout;
    std::vector<LabeledState> members;
    /// Family tag -> member label strings, in declaration order.
    std::vector<std::pair<std::string, std::vector<std::string>>> families;

    std::size_t size() const {
        return members.size();
    }
    /// Member position by label string; throws DomainError if absent.
    std::size_t index_of(const std::string &label) const;
    const std::vector<std::string> &family(const std::string &tag) const;
};

/// Generalized GHZ basis of n qubits, n in {4, 5}. Family "psi" (n=4) or "phi" (n=5).
Ensemble ghz_basis(int n);
/// Bit pattern after the leading 0 of the first ket of member i.
std::vector<int> ghz_pattern(int n, int i);

/// Asymmetric four-party set, families H_1..H_18.
Ensemble ops_asym4(std::span<const int> dims);
/// Symmetric four-party set, families H_{1,1}..H_{8,2}.
Ensemble ops_sym4(std::span<const int> dims);
/// Symmetric five-party set, families H_1..H_10.
Ensemble ops_sym5(std::span<const int> dims);

/// Builds by name: ghz4, ghz5, asym4, sym4, sym5.
Ensemble make_ensemble(const std::string &kind, std::span<const int> dims);

struct OrthogonalityReport {
    double max_abs_overlap = 0.0;
    std::vector<std::pair<std::string, std::string>> violating_pairs;
};

OrthogonalityReport check_mutual_orthogonality(const Ensemble &e, double tol);

}  // namespace locc

#endif
