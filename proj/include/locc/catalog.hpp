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

#ifndef LOCC_CATALOG_HPP
#define LOCC_CATALOG_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"

namespace locc {

struct TheoremInfo {
    int id = 0;
    /// Ensemble kind accepted by make_ensemble.
    std::string ensemble;
    std::vector<int> default_dims;
    std::string summary;
};

/// Registry of the ten built-in protocols, ordered by id.
const std::vector<TheoremInfo> &theorems();
/// Throws DomainError for ids outside 1..10.
const TheoremInfo &theorem_info(int id);

/// Throws DomainError unless dims are legal for the theorem.
void check_dims(int id, std::span<const int> dims);

ProtocolTree build(int id, std::span<const int> dims);
Ensemble theorem_ensemble(int id, std::span<const int> dims);

struct CostFormulaResult {
    std::int64_t r = 0;
    std::int64_t s = 0;
    double ratio = 0.0;
    double total_ebits = 0.0;
};

/// Fraction of the asymmetric set that needs the extra B-D pair, and total cost 2 + r/s.
CostFormulaResult cost_formula_thm5(std::span<const int> dims);
/// Fraction of the symmetric set that needs the extra A-B pair, and total cost 1 + r'/s' + log2(3).
CostFormulaResult cost_formula_thm7(std::span<const int> dims);

struct Fig41Row {
    int d3 = 0;
    int d4 = 0;
    double thm4_ebits = 0.0;
    double thm5_ebits = 0.0;
};

/// Grid over d3 in [d3_lo, d3_hi] and d4 in [d4_lo, d4_hi] at d1 = d2 = 4, d3 outermost.
std::vector<Fig41Row> fig41_data(int d3_lo, int d3_hi, int d4_lo, int d4_hi);

/// Declared resource configuration, as expected copies per resource key.
CostTally theorem_expected_cost(int id, std::span<const int> dims, const EbitValuation &valuation = {});

struct CostComparison {
    bool match = true;
    double declared_ebits = 0.0;
    double simulated_ebits = 0.0;
    /// One line per resource key whose copies differ, plus the ebit total if it differs.
    std::vector<std::string> discrepancies;
};

CostComparison compare_costs(const CostTally &declared, const CostTally &simulated, double tol = 1e-9);

}  // namespace locc

#endif
