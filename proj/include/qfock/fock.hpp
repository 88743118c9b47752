// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Occupation-number representation of a truncated Fock space.
 *
 * A FockVector is a sparse map from occupation tuples to amplitudes. Slots
 * are ordered by (species, mode) ascending; slot index = species * M + mode.
 * Fermionic operators use the Jordan-Wigner sign (-1)^(occupied slots below
 * the target). Bosonic occupations are capped at nmax and creation drops
 * components that would overflow.
 *
 * The empty map is the null element of the space. It is distinct from the
 * vacuum, which carries unit amplitude on the all-zero occupation.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qfock/types.hpp"

namespace qfock {

enum class Statistics { Bose, Fermi };

const char* to_string(Statistics s);

class ModeSpace {
public:
    /// Throws std::invalid_argument for num_modes == 0, nmax < 1 or a
    /// species count other than 1 or 2. nmax is forced to 1 for fermions.
    ModeSpace(std::size_t num_modes, Statistics statistics, int nmax = 8, int species_count = 1);

    std::size_t num_modes() const { return num_modes_; }
    Statistics statistics() const { return statistics_; }
    int nmax() const { return nmax_; }
    int species_count() const { return species_count_; }
    std::size_t slot_count() const { return num_modes_ * static_cast<std::size_t>(species_count_); }

    /// Throws std::out_of_range for an invalid mode or species.
    std::size_t slot(std::size_t mode, std::size_t species = 0) const;

    /// Full basis dimension; throws std::overflow_error when it exceeds 2^63.
    std::uint64_t dimension() const;

    bool operator==(const ModeSpace&) const = default;

private:
    std::size_t num_modes_;
    Statistics statistics_;
    int nmax_;
    int species_count_;
};

using Occupation = std::vector<std::uint8_t>;

class FockVector {
public:
    using Map = std::map<Occupation, Complex>;

    /// The null element.
    explicit FockVector(ModeSpace space) : space_(std::move(space)) {}

    /// Single basis state. Throws std::invalid_argument if the occupation
    /// does not fit the mode space.
    static FockVector basis(const ModeSpace& space, const Occupation& occ, Complex amplitude = 1.0);

    const ModeSpace& space() const { return space_; }
    const Map& terms() const { return amps_; }
    bool is_null() const { return amps_.empty(); }
    std::size_t size() const { return amps_.size(); }

    Complex amplitude(const Occupation& occ) const;

    /// Adds to the amplitude on occ. Exact zeros are erased so the null
    /// element stays the empty map.
    void accumulate(const Occupation& occ, Complex amplitude);

    Real squared_norm() const;
    Real norm() const;

    /// Throws std::domain_error on the null element.
    FockVector normalized() const;

    /// Restriction to the total-particle-number sector n (all species).
    FockVector sector(int n) const;

    /// Distinct total particle numbers present, ascending.
    std::vector<int> sectors() const;

    FockVector& operator+=(const FockVector& other);
    FockVector& operator-=(const FockVector& other);
    FockVector& operator*=(Complex factor);

    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend FockVector operator*(Complex c, FockVector v) { return v *= c; }

private:
    ModeSpace space_;
    Map amps_;
};

int particle_count(const Occupation& occ);

FockVector vacuum(const ModeSpace& space);

FockVector create(const FockVector& v, std::size_t mode, std::size_t species = 0);
FockVector annihilate(const FockVector& v, std::size_t mode, std::size_t species = 0);

/// B^dag = sum_a coeffs[a] A^dag_a with coeffs[a] = <phi_a, chi_beta>.
FockVector transformed_create(const FockVector& v, std::span<const Complex> coeffs, std::size_t species = 0);

/// Adjoint of transformed_create: B = sum_a conj(coeffs[a]) A_a.
FockVector transformed_annihilate(const FockVector& v, std::span<const Complex> coeffs, std::size_t species = 0);

/// Conjugate-linear in u. Throws std::invalid_argument on mismatched spaces.
Complex inner(const FockVector& u, const FockVector& v);

inline constexpr struct AllModes {
} all_modes;

/// <v, A^dag_a A_a v>. Throws std::domain_error if v is not normalized.
Real number_expectation(const FockVector& v, std::size_t mode, std::size_t species = 0);
Real number_expectation(const FockVector& v, AllModes, std::size_t species = 0);

/// <A^dag A - Abar^dag Abar> summed over modes; needs species_count == 2.
Real net_number(const FockVector& v);

/// Normalized A^dag(xi) A^dag(eta) vacuum. Returns the null element when the
/// product vanishes (fermions with xi parallel to eta).
FockVector two_particle_symmetrized(std::span<const Complex> xi, std::span<const Complex> eta, const ModeSpace& space);

namespace detail {

/// Ladder action with the Jordan-Wigner string optionally disabled. Only the
/// fault-injection path of the verifier turns it off.
FockVector create_impl(const FockVector& v, std::size_t mode, std::size_t species, bool jordan_wigner);
FockVector annihilate_impl(const FockVector& v, std::size_t mode, std::size_t species, bool jordan_wigner);

}  // namespace detail

}  // namespace qfock
