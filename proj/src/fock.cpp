// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qfock {

const char* to_string(Statistics s) { return s == Statistics::Bose ? "bose" : "fermi"; }

ModeSpace::ModeSpace(std::size_t num_modes, Statistics statistics, int nmax, int species_count)
    : num_modes_(num_modes), statistics_(statistics), nmax_(statistics == Statistics::Fermi ? 1 : nmax),
      species_count_(species_count) {
    if (num_modes == 0) throw std::invalid_argument("ModeSpace: num_modes must be positive");
    if (nmax_ < 1 || nmax_ > 255) throw std::invalid_argument("ModeSpace: nmax must lie in [1, 255]");
    if (species_count != 1 && species_count != 2)
        throw std::invalid_argument("ModeSpace: species_count must be 1 or 2");
}

std::size_t ModeSpace::slot(std::size_t mode, std::size_t species) const {
    if (mode >= num_modes_)
        throw std::out_of_range("mode index " + std::to_string(mode) + " outside [0, " + std::to_string(num_modes_) + ")");
    if (species >= static_cast<std::size_t>(species_count_))
        throw std::out_of_range("species index " + std::to_string(species) + " outside [0, " +
                                std::to_string(species_count_) + ")");
    return species * num_modes_ + mode;
}

std::uint64_t ModeSpace::dimension() const {
    const std::uint64_t base = static_cast<std::uint64_t>(nmax_) + 1;
    std::uint64_t dim = 1;
    for (std::size_t i = 0; i < slot_count(); ++i) {
        if (dim > std::numeric_limits<std::int64_t>::max() / base)
            throw std::overflow_error("ModeSpace: basis dimension exceeds 2^63");
        dim *= base;
    }
    return dim;
}

int particle_count(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

FockVector FockVector::basis(const ModeSpace& space, const Occupation& occ, Complex amplitude) {
    if (occ.size() != space.slot_count()) throw std::invalid_argument("FockVector::basis: occupation length mismatch");
    for (auto n : occ)
        if (n > space.nmax()) throw std::invalid_argument("FockVector::basis: occupation exceeds statistics bound");
    FockVector v(space);
    v.accumulate(occ, amplitude);
    return v;
}

Complex FockVector::amplitude(const Occupation& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex{} : it->second;
}

void FockVector::accumulate(const Occupation& occ, Complex amplitude) {
    auto [it, inserted] = amps_.try_emplace(occ, amplitude);
    if (!inserted) it->second += amplitude;
    if (it->second == Complex{}) amps_.erase(it);
}

Real FockVector::squared_norm() const {
    Real s = 0;
    for (const auto& [occ, a] : amps_) s += std::norm(a);
    return s;
}

Real FockVector::norm() const { return std::sqrt(squared_norm()); }

FockVector FockVector::normalized() const {
    const Real n = norm();
    if (n == 0) throw std::domain_error("cannot normalize the null element");
    FockVector out = *this;
    out *= 1.0 / n;
    return out;
}

FockVector FockVector::sector(int n) const {
    FockVector out(space_);
    for (const auto& [occ, a] : amps_)
        if (particle_count(occ) == n) out.amps_.emplace(occ, a);
    return out;
}

std::vector<int> FockVector::sectors() const {
    std::vector<int> out;
    for (const auto& [occ, a] : amps_) out.push_back(particle_count(occ));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FockVector& FockVector::operator+=(const FockVector& other) {
    if (!(space_ == other.space_)) throw std::invalid_argument("FockVector: mode space mismatch");
    for (const auto& [occ, a] : other.amps_) accumulate(occ, a);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
    if (!(space_ == other.space_)) throw std::invalid_argument("FockVector: mode space mismatch");
    for (const auto& [occ, a] : other.amps_) accumulate(occ, -a);
    return *this;
}

FockVector& FockVector::operator*=(Complex factor) {
    if (factor == Complex{}) {
        amps_.clear();
        return *this;
    }
    for (auto& [occ, a] : amps_) a *= factor;
    return *this;
}

FockVector vacuum(const ModeSpace& space) { return FockVector::basis(space, Occupation(space.slot_count(), 0)); }

namespace {

int parity_below(const Occupation& occ, std::size_t slot) {
    int count = 0;
    for (std::size_t i = 0; i < slot; ++i) count += occ[i];
    return count & 1;
}

void require_normalized(const FockVector& v, const char* what) {
    if (std::abs(v.norm() - 1.0) > kNormTolerance)
        throw std::domain_error(std::string(what) + ": state is not normalized (norm " + std::to_string(v.norm()) + ")");
}

}  // namespace

namespace detail {

FockVector create_impl(const FockVector& v, std::size_t mode, std::size_t species, bool jordan_wigner) {
    const ModeSpace& space = v.space();
    const std::size_t s = space.slot(mode, species);
    const bool fermi = space.statistics() == Statistics::Fermi;
    FockVector out(space);
    for (const auto& [occ, a] : v.terms()) {
        const int n = occ[s];
        if (n >= space.nmax()) continue;
        Occupation next = occ;
        next[s] = static_cast<std::uint8_t>(n + 1);
        Complex factor = fermi ? 1.0 : std::sqrt(static_cast<Real>(n + 1));
        if (fermi && jordan_wigner && parity_below(occ, s)) factor = -factor;
        out.accumulate(next, factor * a);
    }
    return out;
}

FockVector annihilate_impl(const FockVector& v, std::size_t mode, std::size_t species, bool jordan_wigner) {
    const ModeSpace& space = v.space();
    const std::size_t s = space.slot(mode, species);
    const bool fermi = space.statistics() == Statistics::Fermi;
    FockVector out(space);
    for (const auto& [occ, a] : v.terms()) {
        const int n = occ[s];
        if (n == 0) continue;
        Occupation next = occ;
        next[s] = static_cast<std::uint8_t>(n - 1);
        Complex factor = fermi ? 1.0 : std::sqrt(static_cast<Real>(n));
        if (fermi && jordan_wigner && parity_below(occ, s)) factor = -factor;
        out.accumulate(next, factor * a);
    }
    return out;
}

}  // namespace detail

FockVector create(const FockVector& v, std::size_t mode, std::size_t species) {
    return detail::create_impl(v, mode, species, true);
}

FockVector annihilate(const FockVector& v, std::size_t mode, std::size_t species) {
    return detail::annihilate_impl(v, mode, species, true);
}

FockVector transformed_create(const FockVector& v, std::span<const Complex> coeffs, std::size_t species) {
    if (coeffs.size() != v.space().num_modes())
        throw std::invalid_argument("transformed_create: expected one coefficient per mode");
    FockVector out(v.space());
    for (std::size_t a = 0; a < coeffs.size(); ++a)
        if (coeffs[a] != Complex{}) out += coeffs[a] * create(v, a, species);
    return out;
}

FockVector transformed_annihilate(const FockVector& v, std::span<const Complex> coeffs, std::size_t species) {
    if (coeffs.size() != v.space().num_modes())
        throw std::invalid_argument("transformed_annihilate: expected one coefficient per mode");
    FockVector out(v.space());
    for (std::size_t a = 0; a < coeffs.size(); ++a)
        if (coeffs[a] != Complex{}) out += std::conj(coeffs[a]) * annihilate(v, a, species);
    return out;
}

Complex inner(const FockVector& u, const FockVector& v) {
    if (!(u.space() == v.space())) throw std::invalid_argument("inner: mode space mismatch");
    const auto& small = u.size() <= v.size() ? u : v;
    const auto& large = u.size() <= v.size() ? v : u;
    Complex sum{};
    for (const auto& [occ, a] : small.terms()) {
        auto it = large.terms().find(occ);
        if (it == large.terms().end()) continue;
        sum += (&small == &u) ? std::conj(a) * it->second : std::conj(it->second) * a;
    }
    return sum;
}

Real number_expectation(const FockVector& v, std::size_t mode, std::size_t species) {
    require_normalized(v, "number_expectation");
    const std::size_t s = v.space().slot(mode, species);
    Real sum = 0;
    for (const auto& [occ, a] : v.terms()) sum += occ[s] * std::norm(a);
    return sum;
}

Real number_expectation(const FockVector& v, AllModes, std::size_t species) {
    require_normalized(v, "number_expectation");
    const std::size_t first = v.space().slot(0, species);
    const std::size_t last = first + v.space().num_modes();
    Real sum = 0;
    for (const auto& [occ, a] : v.terms()) {
        int n = 0;
        for (std::size_t i = first; i < last; ++i) n += occ[i];
        sum += n * std::norm(a);
    }
    return sum;
}

Real net_number(const FockVector& v) {
    if (v.space().species_count() != 2) throw std::invalid_argument("net_number: mode space has no antiparticle species");
    return number_expectation(v, all_modes, 0) - number_expectation(v, all_modes, 1);
}

FockVector two_particle_symmetrized(std::span<const Complex> xi, std::span<const Complex> eta, const ModeSpace& space) {
    if (xi.size() != space.num_modes() || eta.size() != space.num_modes())
        throw std::invalid_argument("two_particle_symmetrized: expected one coefficient per mode");
    auto unit = [](std::span<const Complex> c) {
        Real s = 0;
        for (auto z : c) s += std::norm(z);
        return std::abs(std::sqrt(s) - 1.0) <= kNormTolerance;
    };
    if (!unit(xi) || !unit(eta)) throw std::domain_error("two_particle_symmetrized: xi and eta must be normalized");

    FockVector v = transformed_create(transformed_create(vacuum(space), eta), xi);
    // Pauli exclusion for parallel fermionic orbitals.
    if (v.norm() < 1e-12) return FockVector(space);
    return v.normalized();
}

}  // namespace qfock
