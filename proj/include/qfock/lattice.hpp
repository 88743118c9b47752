// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lattice.hpp
 * @brief Periodic 1-D lattice with a centered momentum grid (hbar = c = 1).
 *
 *     x_j = (j - M/2) dx,          j = 0..M-1
 *     p_k = 2 pi k / (M dx),       k = -M/2..M/2-1, stored at index k + M/2
 *     <phi_p, phi_x> = exp(-i p x) / sqrt(M)
 */

#pragma once

#include <cstddef>

#include "qfock/types.hpp"

namespace qfock {

enum class Dispersion {
    Nonrelativistic,      ///< E = p^2 / 2m
    Relativistic,         ///< w = sqrt(m^2 + p^2)
    LatticeRelativistic,  ///< w = sqrt(m^2 + (2/dx)^2 sin^2(p dx / 2)), lattice Klein-Gordon
};

const char* to_string(Dispersion d);

struct LatticeSpec {
    std::size_t num_sites = 64;
    Real spacing = 1.0;
    Real mass = 1.0;
    Dispersion dispersion = Dispersion::Nonrelativistic;

    /// Throws std::invalid_argument unless num_sites is even and >= 2,
    /// spacing > 0 and mass >= 0.
    void validate() const;

    Real length() const { return static_cast<Real>(num_sites) * spacing; }
    Real position(std::size_t j) const;
    Real momentum(std::size_t i) const;
    /// Signed momentum index k for storage index i.
    long momentum_number(std::size_t i) const { return static_cast<long>(i) - static_cast<long>(num_sites / 2); }
    Real energy(Real p) const;

    RVector positions() const;
    RVector momenta() const;
    RVector energies() const;
};

struct WaveAmplitude {
    LatticeSpec lattice;
    CVector values;  ///< f(x_j)
};

struct MomentumAmplitude {
    LatticeSpec lattice;
    CVector values;  ///< g(p_k), storage index k + M/2
};

/// <phi_p, phi_x>. Throws std::out_of_range for invalid indices.
Complex overlap(const LatticeSpec& lattice, std::size_t x_index, std::size_t p_index);

MomentumAmplitude to_momentum(const WaveAmplitude& f);
WaveAmplitude from_momentum(const MomentumAmplitude& g);

/// Sum over sites of |f|^2.
Real squared_norm(const WaveAmplitude& f);

/// exp(i p_k x) / sqrt(M) on the sites.
WaveAmplitude plane_wave(const LatticeSpec& lattice, std::size_t p_index);

WaveAmplitude point_source(const LatticeSpec& lattice, std::size_t x_index);

}  // namespace qfock
