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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace locc {

namespace {

constexpr LinearIndex kMaxSpace = LinearIndex{1} << 62;

void require_same_layout(const SparseState &a, const SparseState &b, const char *op) {
    if (!(a.layout() == b.layout())) {
        throw StructuralError(std::string(op) + ": layout mismatch");
    }
}

/// Levels of a party's wires from a local mixed-radix index.
void decode_local(LinearIndex local, const SystemLayout &layout, const std::vector<std::size_t> &positions,
                  std::vector<int> &levels) {
    for (std::size_t k = positions.size(); k-- > 0;) {
        int d = layout.dim(positions[k]);
        levels[positions[k]] = static_cast<int>(local % d);
        local /= d;
    }
}

}  // namespace

std::vector<int> PartyDecl::ancilla_dims() const {
    std::vector<int> out;
    for (std::size_t k = 1; k < wires.size(); k++) {
        out.push_back(wires[k].dim);
    }
    return out;
}

LinearIndex PartyDecl::local_size() const {
    LinearIndex n = 1;
    for (const auto &w : wires) {
        n *= w.dim;
    }
    return n;
}

SystemLayout::SystemLayout(std::vector<PartyDecl> parties) : parties_(std::move(parties)) {
    std::set<std::string> party_names;
    std::set<std::string> wire_names;
    for (std::size_t p = 0; p < parties_.size(); p++) {
        const auto &party = parties_[p];
        if (party.name.empty() || !party_names.insert(party.name).second) {
            throw StructuralError("layout: empty or duplicate party name '" + party.name + "'");
        }
        if (party.wires.empty()) {
            throw StructuralError("layout: party '" + party.name + "' has no wires");
        }
        party_wires_.emplace_back();
        for (const auto &w : party.wires) {
            if (w.dim < 2) {
                throw StructuralError("layout: wire '" + w.name + "' has dimension < 2");
            }
            if (w.name.empty() || !wire_names.insert(w.name).second) {
                throw StructuralError("layout: empty or duplicate wire name '" + w.name + "'");
            }
            party_wires_.back().push_back(wires_.size());
            wires_.push_back(w);
            owners_.push_back(p);
        }
    }
    strides_.assign(wires_.size(), 1);
    space_size_ = 1;
    for (std::size_t k = wires_.size(); k-- > 0;) {
        strides_[k] = space_size_;
        if (space_size_ > kMaxSpace / wires_[k].dim) {
            throw StructuralError("layout: basis too large for 64-bit indexing");
        }
        space_size_ *= wires_[k].dim;
    }
}

SystemLayout SystemLayout::main_only(std::span<const std::string> names, std::span<const int> dims) {
    if (names.size() != dims.size()) {
        throw StructuralError("layout: names and dims differ in length");
    }
    std::vector<PartyDecl> parties;
    for (std::size_t k = 0; k < names.size(); k++) {
        parties.push_back(PartyDecl{names[k], {WireDecl{names[k], dims[k], false}}});
    }
    return SystemLayout(std::move(parties));
}

SystemLayout SystemLayout::lettered(std::span<const int> dims) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < dims.size(); k++) {
        names.push_back(std::string(1, static_cast<char>('A' + k)));
    }
    return main_only(names, dims);
}

std::optional<std::size_t> SystemLayout::find_wire(std::string_view name) const {
    for (std::size_t k = 0; k < wires_.size(); k++) {
        if (wires_[k].name == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> SystemLayout::find_party(std::string_view name) const {
    for (std::size_t k = 0; k < parties_.size(); k++) {
        if (parties_[k].name == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t SystemLayout::wire_position(std::string_view name) const {
    auto pos = find_wire(name);
    if (!pos) {
        throw StructuralError("layout: no wire named '" + std::string(name) + "'");
    }
    return *pos;
}

std::size_t SystemLayout::party_position(std::string_view name) const {
    auto pos = find_party(name);
    if (!pos) {
        throw StructuralError("layout: no party named '" + std::string(name) + "'");
    }
    return *pos;
}

LinearIndex SystemLayout::encode(std::span<const int> levels) const {
    if (levels.size() != wires_.size()) {
        throw StructuralError("basis index length does not match the layout");
    }
    LinearIndex index = 0;
    for (std::size_t k = 0; k < levels.size(); k++) {
        if (levels[k] < 0 || levels[k] >= wires_[k].dim) {
            throw StructuralError("basis level out of range on wire '" + wires_[k].name + "'");
        }
        index += levels[k] * strides_[k];
    }
    return index;
}

BasisIndex SystemLayout::decode(LinearIndex index) const {
    BasisIndex levels(wires_.size());
    for (std::size_t k = 0; k < wires_.size(); k++) {
        levels[k] = level(index, k);
    }
    return levels;
}

LinearIndex SystemLayout::sub_index(LinearIndex index, std::span<const std::size_t> positions) const {
    LinearIndex out = 0;
    for (auto pos : positions) {
        out = out * wires_[pos].dim + level(index, pos);
    }
    return out;
}

SystemLayout SystemLayout::with_ancilla(std::string_view party, WireDecl wire) const {
    auto parties = parties_;
    wire.ancilla = true;
    parties[party_position(party)].wires.push_back(std::move(wire));
    return SystemLayout(std::move(parties));
}

SystemLayout SystemLayout::with_wire_moved(std::string_view wire, std::string_view destination) const {
    std::size_t pos = wire_position(wire);
    std::size_t src = owners_[pos];
    std::size_t dst = party_position(destination);
    if (src == dst) {
        throw StructuralError("layout: wire already belongs to '" + std::string(destination) + "'");
    }
    if (parties_[src].wires.size() != 1) {
        throw StructuralError("layout: party '" + parties_[src].name + "' holds wires besides '" +
                              std::string(wire) + "'");
    }
    WireDecl moved = wires_[pos];
    std::vector<PartyDecl> parties;
    for (std::size_t p = 0; p < parties_.size(); p++) {
        if (p == src) {
            continue;
        }
        PartyDecl party = parties_[p];
        if (p == dst) {
            auto it = std::find_if(party.wires.begin(), party.wires.end(), [](const WireDecl &w) { return w.ancilla; });
            party.wires.insert(it, moved);
        }
        parties.push_back(std::move(party));
    }
    return SystemLayout(std::move(parties));
}

SparseState::SparseState(SystemLayout layout, AmplitudeVector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.space_size()) {
        throw StructuralError("state: amplitude vector size does not match the layout");
    }
    amps_.prune(Amplitude(1.0), kPruneTolerance);
}

SparseState SparseState::basis(const SystemLayout &layout, std::span<const int> levels) {
    AmplitudeVector v(layout.space_size());
    v.insert(layout.encode(levels)) = 1.0;
    return SparseState(layout, std::move(v));
}

SparseState SparseState::from_terms(const SystemLayout &layout,
                                    std::span<const std::pair<BasisIndex, Amplitude>> terms) {
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    entries.reserve(terms.size());
    for (const auto &[levels, amp] : terms) {
        entries.emplace_back(layout.encode(levels), amp);
    }
    return from_entries(layout, std::move(entries));
}

SparseState SparseState::from_entries(const SystemLayout &layout,
                                      std::vector<std::pair<LinearIndex, Amplitude>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    AmplitudeVector v(layout.space_size());
    v.reserve(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t k = 0; k < entries.size();) {
        LinearIndex index = entries[k].first;
        if (index < 0 || index >= layout.space_size()) {
            throw StructuralError("state: basis index outside the layout");
        }
        Amplitude sum = 0.0;
        for (; k < entries.size() && entries[k].first == index; k++) {
            sum += entries[k].second;
        }
        if (std::abs(sum) > kPruneTolerance) {
            v.insertBack(index) = sum;
        }
    }
    return SparseState(layout, std::move(v));
}

Amplitude SparseState::amplitude(std::span<const int> levels) const {
    return amps_.coeff(layout_.encode(levels));
}

Amplitude inner_product(const SparseState &a, const SparseState &b) {
    require_same_layout(a, b, "inner_product");
    return a.amplitudes().dot(b.amplitudes());
}

double norm(const SparseState &s) {
    return s.amplitudes().norm();
}

SparseState normalize(const SparseState &s) {
    double n = norm(s);
    if (!(n > kPruneTolerance)) {
        throw DegenerateInputError("normalize: zero state");
    }
    return SparseState(s.layout(), s.amplitudes() / Amplitude(n));
}

SparseState scale(const SparseState &s, Amplitude factor) {
    return SparseState(s.layout(), s.amplitudes() * factor);
}

SparseState add(const SparseState &a, const SparseState &b) {
    require_same_layout(a, b, "add");
    return SparseState(a.layout(), a.amplitudes() + b.amplitudes());
}

SparseState tensor(const SparseState &a, const SparseState &b) {
    std::vector<PartyDecl> parties = a.layout().parties();
    for (const auto &p : b.layout().parties()) {
        parties.push_back(p);
    }
    SystemLayout layout(std::move(parties));  // rejects party or wire name collisions
    LinearIndex size_b = b.layout().space_size();
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    entries.reserve(a.term_count() * b.term_count());
    a.for_each([&](LinearIndex ia, Amplitude va) {
        b.for_each([&](LinearIndex ib, Amplitude vb) { entries.emplace_back(ia * size_b + ib, va * vb); });
    });
    return SparseState::from_entries(layout, std::move(entries));
}

SparseState extend(const SparseState &a, const SparseState &b) {
    SystemLayout layout = a.layout();
    for (const auto &party : b.layout().parties()) {
        if (!layout.find_party(party.name)) {
            throw StructuralError("extend: party '" + party.name + "' is not in the base layout");
        }
        for (const auto &w : party.wires) {
            layout = layout.with_ancilla(party.name, w);
        }
    }
    std::vector<std::size_t> from_a(a.layout().wire_count());
    std::vector<std::size_t> from_b(b.layout().wire_count());
    for (std::size_t k = 0; k < from_a.size(); k++) {
        from_a[k] = layout.wire_position(a.layout().wire(k).name);
    }
    for (std::size_t k = 0; k < from_b.size(); k++) {
        from_b[k] = layout.wire_position(b.layout().wire(k).name);
    }
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    entries.reserve(a.term_count() * b.term_count());
    a.for_each([&](LinearIndex ia, Amplitude va) {
        LinearIndex base = 0;
        for (std::size_t k = 0; k < from_a.size(); k++) {
            base += a.layout().level(ia, k) * layout.stride(from_a[k]);
        }
        b.for_each([&](LinearIndex ib, Amplitude vb) {
            LinearIndex index = base;
            for (std::size_t k = 0; k < from_b.size(); k++) {
                index += b.layout().level(ib, k) * layout.stride(from_b[k]);
            }
            entries.emplace_back(index, va * vb);
        });
    });
    return SparseState::from_entries(layout, std::move(entries));
}

ProjectionResult apply_projector(const Projector &p, const SparseState &s) {
    const auto &layout = s.layout();
    std::vector<std::size_t> positions;
    for (const auto &w : p.wires) {
        positions.push_back(layout.wire_position(w));
    }
    for (const auto &term : p.terms) {
        if (term.size() != positions.size()) {
            throw StructuralError("projector term does not list one level set per wire");
        }
    }
    auto inside = [&](LinearIndex index) {
        for (const auto &term : p.terms) {
            bool hit = true;
            for (std::size_t k = 0; k < positions.size() && hit; k++) {
                const auto &allowed = term[k];
                hit = std::find(allowed.begin(), allowed.end(), layout.level(index, positions[k])) != allowed.end();
            }
            if (hit) {
                return true;
            }
        }
        return false;
    };
    AmplitudeVector out(layout.space_size());
    s.for_each([&](LinearIndex index, Amplitude v) {
        if (inside(index)) {
            out.insertBack(index) = v;
        }
    });
    double total = s.amplitudes().squaredNorm();
    double kept = out.squaredNorm();
    return {SparseState(layout, std::move(out)), total > 0 ? kept / total : 0.0};
}

SparseState apply_cnot(const SparseState &s, std::string_view control, std::string_view target) {
    const auto &layout = s.layout();
    std::size_t c = layout.wire_position(control);
    std::size_t t = layout.wire_position(target);
    if (c == t) {
        throw StructuralError("cnot: control and target coincide");
    }
    if (layout.dim(c) != 2 || layout.dim(t) != 2) {
        throw StructuralError("cnot: wires must be qubits");
    }
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    entries.reserve(s.term_count());
    s.for_each([&](LinearIndex index, Amplitude v) {
        if (layout.level(index, c) == 1) {
            index += layout.level(index, t) == 0 ? layout.stride(t) : -layout.stride(t);
        }
        entries.emplace_back(index, v);
    });
    return SparseState::from_entries(layout, std::move(entries));
}

SparseState relayout(const SparseState &s, const SystemLayout &target) {
    const auto &layout = s.layout();
    if (layout.wire_count() != target.wire_count()) {
        throw StructuralError("relayout: wire sets differ");
    }
    std::vector<LinearIndex> strides(layout.wire_count());
    for (std::size_t k = 0; k < strides.size(); k++) {
        std::size_t pos = target.wire_position(layout.wire(k).name);
        if (target.dim(pos) != layout.dim(k)) {
            throw StructuralError("relayout: dimension of wire '" + layout.wire(k).name + "' differs");
        }
        strides[k] = target.stride(pos);
    }
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    entries.reserve(s.term_count());
    s.for_each([&](LinearIndex index, Amplitude v) {
        LinearIndex out = 0;
        for (std::size_t k = 0; k < strides.size(); k++) {
            out += layout.level(index, k) * strides[k];
        }
        entries.emplace_back(out, v);
    });
    return SparseState::from_entries(target, std::move(entries));
}

SparseState contract_wire(const SparseState &s, std::string_view wire, const LocalVector &bra) {
    const auto &layout = s.layout();
    std::size_t pos = layout.wire_position(wire);
    if (bra.size() != layout.dim(pos)) {
        throw StructuralError("contract_wire: bra dimension mismatch");
    }
    std::vector<PartyDecl> parties;
    for (const auto &party : layout.parties()) {
        PartyDecl kept{party.name, {}};
        for (const auto &w : party.wires) {
            if (w.name != wire) {
                kept.wires.push_back(w);
            }
        }
        if (!kept.wires.empty()) {
            parties.push_back(std::move(kept));
        }
    }
    SystemLayout reduced(std::move(parties));
    std::vector<std::pair<std::size_t, std::size_t>> map;  // old position -> new position
    for (std::size_t k = 0; k < layout.wire_count(); k++) {
        if (k != pos) {
            map.emplace_back(k, reduced.wire_position(layout.wire(k).name));
        }
    }
    std::vector<std::pair<LinearIndex, Amplitude>> entries;
    entries.reserve(s.term_count());
    s.for_each([&](LinearIndex index, Amplitude v) {
        LinearIndex out = 0;
        for (auto [from, to] : map) {
            out += layout.level(index, from) * reduced.stride(to);
        }
        entries.emplace_back(out, std::conj(bra[layout.level(index, pos)]) * v);
    });
    return SparseState::from_entries(reduced, std::move(entries));
}

Amplitude root_of_unity(int d, long long k) {
    long long r = ((k % d) + d) % d;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d));
}

int fourier_family_size(FourierKind kind, int d) {
    switch (kind) {
        case FourierKind::kAlpha:
            return d;
        case FourierKind::kBeta:
        case FourierKind::kGamma:
            return d - 1;
        case FourierKind::kKappa:
            return d - 2;
    }
    return 0;
}

LocalVector local_fourier_vector(FourierKind kind, int d, int index) {
    int size = fourier_family_size(kind, d);
    if (d < 2 || size < 1 || index < 0 || index >= size) {
        throw DomainError("fourier vector: index " + std::to_string(index) + " outside its family at d=" +
                          std::to_string(d));
    }
    int offset = (kind == FourierKind::kGamma || kind == FourierKind::kKappa) ? 1 : 0;
    LocalVector v = LocalVector::Zero(d);
    for (int u = 0; u < size; u++) {
        v[u + offset] = root_of_unity(size, static_cast<long long>(index) * u);
    }
    return v;
}

LocalVector basis_vector(int d, int level) {
    if (level < 0 || level >= d) {
        throw DomainError("basis vector: level out of range");
    }
    LocalVector v = LocalVector::Zero(d);
    v[level] = 1.0;
    return v;
}

SparseState product_state(const SystemLayout &layout, std::span<const LocalVector> factors) {
    if (factors.size() != layout.party_count()) {
        throw StructuralError("product_state: one factor per party required");
    }
    std::vector<std::pair<LinearIndex, Amplitude>> entries{{0, 1.0}};
    std::vector<int> levels(layout.wire_count(), 0);
    for (std::size_t p = 0; p < factors.size(); p++) {
        const auto &positions = layout.party_wires(p);
        if (factors[p].size() != layout.parties()[p].local_size()) {
            throw StructuralError("product_state: factor size does not match party '" + layout.parties()[p].name + "'");
        }
        std::vector<std::pair<LinearIndex, Amplitude>> next;
        for (Eigen::Index l = 0; l < factors[p].size(); l++) {
            Amplitude c = factors[p][l];
            if (std::abs(c) <= kPruneTolerance) {
                continue;
            }
            decode_local(l, layout, positions, levels);
            LinearIndex offset = 0;
            for (auto pos : positions) {
                offset += levels[pos] * layout.stride(pos);
            }
            for (const auto &[index, v] : entries) {
                next.emplace_back(index + offset, v * c);
            }
        }
        entries = std::move(next);
    }
    return SparseState::from_entries(layout, std::move(entries));
}

std::optional<std::vector<LocalVector>> factorize(const SparseState &s, double tol) {
    const auto &layout = s.layout();
    if (s.empty()) {
        return std::nullopt;
    }
    LinearIndex ref = 0;
    double best = -1;
    s.for_each([&](LinearIndex index, Amplitude v) {
        if (std::abs(v) > best) {
            best = std::abs(v);
            ref = index;
        }
    });
    Amplitude pivot = s.amplitudes().coeff(ref);
    std::vector<LocalVector> factors;
    std::vector<int> levels = layout.decode(ref);
    for (std::size_t p = 0; p < layout.party_count(); p++) {
        const auto &positions = layout.party_wires(p);
        LinearIndex size = layout.parties()[p].local_size();
        LocalVector f(size);
        std::vector<int> probe = levels;
        for (LinearIndex l = 0; l < size; l++) {
            decode_local(l, layout, positions, probe);
            f[l] = s.amplitudes().coeff(layout.encode(probe));
        }
        factors.push_back(std::move(f));
    }
    // Product of slices through the pivot overcounts it by pivot^(n-1).
    Amplitude overcount = 1.0;
    for (std::size_t p = 1; p < layout.party_count(); p++) {
        overcount *= pivot;
    }
    factors[0] /= overcount;
    SparseState rebuilt = product_state(layout, factors);
    double diff = (s.amplitudes() - rebuilt.amplitudes()).norm();
    if (diff > tol * norm(s)) {
        return std::nullopt;
    }
    return factors;
}

}  // namespace locc
