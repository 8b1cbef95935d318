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

#ifndef LOCC_QSTATE_HPP
#define LOCC_QSTATE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace locc {

using Amplitude = std::complex<double>;
using LinearIndex = std::int64_t;
using AmplitudeVector = Eigen::SparseVector<Amplitude, Eigen::ColMajor, LinearIndex>;
using LocalVector = Eigen::VectorXcd;

/// One computational-basis level per wire, wires in layout order.
using BasisIndex = std::vector<int>;

/// Amplitudes at or below this magnitude are dropped after every operation.
inline constexpr double kPruneTolerance = 1e-14;

/// Malformed layouts, wire mismatches, illegal gates.
struct StructuralError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Arguments outside a family's index or dimension range.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Zero vectors where a normalizable one is required.
struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WireDecl {
    std::string name;
    int dim = 2;
    bool ancilla = false;

    bool operator==(const WireDecl &) const = default;
};

/// A party's wires. wires[0] is the main system; the rest are ancillas in attachment order
/// (a teleported main wire sits right after the receiving party's own main wires).
struct PartyDecl {
    std::string name;
    std::vector<WireDecl> wires;

    int main_dim() const {
        return wires.front().dim;
    }
    std::vector<int> ancilla_dims() const;
    LinearIndex local_size() const;

    bool operator==(const PartyDecl &) const = default;
};

class SystemLayout {
   public:
    SystemLayout() = default;
    explicit SystemLayout(std::vector<PartyDecl> parties);

    /// One main wire per party, wire named after the party.
    static SystemLayout main_only(std::span<const std::string> names, std::span<const int> dims);
    /// Parties "A", "B", ... with one main wire each.
    static SystemLayout lettered(std::span<const int> dims);

    const std::vector<PartyDecl> &parties() const {
        return parties_;
    }
    std::size_t party_count() const {
        return parties_.size();
    }
    std::size_t wire_count() const {
        return wires_.size();
    }
    const WireDecl &wire(std::size_t pos) const {
        return wires_[pos];
    }
    int dim(std::size_t pos) const {
        return wires_[pos].dim;
    }
    LinearIndex stride(std::size_t pos) const {
        return strides_[pos];
    }
    LinearIndex space_size() const {
        return space_size_;
    }
    /// Index into parties() of the party holding the wire at pos.
    std::size_t owner(std::size_t pos) const {
        return owners_[pos];
    }
    /// Global wire positions of a party, in its own wire order.
    const std::vector<std::size_t> &party_wires(std::size_t party) const {
        return party_wires_[party];
    }

    std::optional<std::size_t> find_wire(std::string_view name) const;
    std::optional<std::size_t> find_party(std::string_view name) const;
    /// Throws StructuralError when absent.
    std::size_t wire_position(std::string_view name) const;
    std::size_t party_position(std::string_view name) const;

    int level(LinearIndex index, std::size_t pos) const {
        return static_cast<int>((index / strides_[pos]) % wires_[pos].dim);
    }
    LinearIndex encode(std::span<const int> levels) const;
    BasisIndex decode(LinearIndex index) const;

    /// Mixed-radix index of the given wires' levels (first wire most significant).
    LinearIndex sub_index(LinearIndex index, std::span<const std::size_t> positions) const;

    /// Copy with a new ancilla wire appended to a party.
    SystemLayout with_ancilla(std::string_view party, WireDecl wire) const;
    /// Copy with a main wire moved into another party; the source party must hold nothing else.
    SystemLayout with_wire_moved(std::string_view wire, std::string_view destination) const;

    bool operator==(const SystemLayout &other) const {
        return parties_ == other.parties_;
    }

   private:
    std::vector<PartyDecl> parties_;
    std::vector<WireDecl> wires_;
    std::vector<std::size_t> owners_;
    std::vector<std::vector<std::size_t>> party_wires_;
    std::vector<LinearIndex> strides_;
    LinearIndex space_size_ = 1;
};

/// Pure state stored as a sparse amplitude vector over the layout's mixed-radix basis.
class SparseState {
   public:
    SparseState() = default;
    SparseState(SystemLayout layout, AmplitudeVector amplitudes);

    static SparseState basis(const SystemLayout &layout, std::span<const int> levels);
    static SparseState from_terms(const SystemLayout &layout, std::span<const std::pair<BasisIndex, Amplitude>> terms);
    /// Sorts, merges duplicate indices and prunes.
    static SparseState from_entries(const SystemLayout &layout, std::vector<std::pair<LinearIndex, Amplitude>> entries);

    const SystemLayout &layout() const {
        return layout_;
    }
    const AmplitudeVector &amplitudes() const {
        return amps_;
    }
    Amplitude amplitude(std::span<const int> levels) const;
    std::size_t term_count() const {
        return static_cast<std::size_t>(amps_.nonZeros());
    }
    bool empty() const {
        return amps_.nonZeros() == 0;
    }

    /// Visits (linear index, amplitude) in increasing index order.
    template <typename F>
    void for_each(F &&f) const {
        for (AmplitudeVector::InnerIterator it(amps_); it; ++it) {
            f(it.index(), it.value());
        }
    }

   private:
    SystemLayout layout_;
    AmplitudeVector amps_;
};

enum class FourierKind { kAlpha, kBeta, kGamma, kKappa };

/// Subsets of levels, one list per wire of a projector.
using ElementaryTerm = std::vector<std::vector<int>>;

/// Diagonal projector: the span of the union of product boxes over the listed wires.
struct Projector {
    std::vector<std::string> wires;
    std::vector<ElementaryTerm> terms;
};

struct ProjectionResult {
    SparseState state;
    double probability = 0.0;
};

Amplitude inner_product(const SparseState &a, const SparseState &b);
double norm(const SparseState &s);
SparseState normalize(const SparseState &s);
SparseState scale(const SparseState &s, Amplitude factor);
SparseState add(const SparseState &a, const SparseState &b);

/// Parties of a and b must be disjoint; b's parties follow a's.
SparseState tensor(const SparseState &a, const SparseState &b);
/// Every wire of b is appended as an ancilla to the same-named party of a.
SparseState extend(const SparseState &a, const SparseState &b);

ProjectionResult apply_projector(const Projector &p, const SparseState &s);
SparseState apply_cnot(const SparseState &s, std::string_view control, std::string_view target);
/// Reorders amplitudes onto a layout holding the same wires under a different grouping.
SparseState relayout(const SparseState &s, const SystemLayout &target);
/// Contracts a wire against a local bra and drops it from the layout.
SparseState contract_wire(const SparseState &s, std::string_view wire, const LocalVector &bra);

/// ω_d^k computed directly from the reduced exponent.
Amplitude root_of_unity(int d, long long k);
LocalVector local_fourier_vector(FourierKind kind, int d, int index);
/// Number of valid indices of a family at local dimension d.
int fourier_family_size(FourierKind kind, int d);
LocalVector basis_vector(int d, int level);

/// Product of per-party local vectors (each over its party's full local space).
SparseState product_state(const SystemLayout &layout, std::span<const LocalVector> factors);
/// Per-party factors if the state is a product across parties, scaled so their product reproduces it.
std::optional<std::vector<LocalVector>> factorize(const SparseState &s, double tol = 1e-10);

}  // namespace locc

#endif
