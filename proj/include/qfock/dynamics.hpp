// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief One-particle observables X, P, H = P^2/2m, C = (XP + PX)/2 and exact
 *        free evolution on a periodic lattice.
 *
 * [X, P] = i fails on a periodic lattice, so the correlation identities only
 * hold for packets kept at least 8 sigma from the seam at x = +-L/2.
 */

#pragma once

#include <span>
#include <vector>

#include "qfock/lattice.hpp"

namespace qfock {

struct ObservableSet {
    CMatrix X;  ///< diagonal, x_j
    CMatrix P;  ///< F^dag diag(p_k) F
    CMatrix H;  ///< P^2 / 2m
    CMatrix C;  ///< (XP + PX) / 2
};

/// Dense M x M matrices. Throws std::invalid_argument unless the dispersion
/// is nonrelativistic with m > 0.
ObservableSet build_observables(const LatticeSpec& lattice);

/// Distance from a point to the periodic seam at x = -L/2 (== L/2).
Real seam_distance(const LatticeSpec& lattice, Real x);

/// f(x) ~ exp(-(1 + i chirp)(x - x0)^2 / (4 sigma0^2) + i p0 x), normalized.
/// chirp > 0 gives <C> = -chirp/2 (shrinking packet). Throws
/// std::invalid_argument if sigma0 < 2 dx or x0 lies within 8 sigma0 of the seam.
WaveAmplitude gaussian_packet(const LatticeSpec& lattice, Real x0, Real p0, Real sigma0, Real chirp);

/// Exact spectral propagation by exp(-i p^2 t / 2m) in momentum space.
WaveAmplitude evolve(const WaveAmplitude& f, Real t);

struct TrajectoryRecord {
    Real t;
    Real mean_x;
    Real mean_p;
    Real mean_x2;
    Real mean_c;
    Real mean_h;
    Real dx;
    Real dp;
};

/// Expectation values of f; uses FFTs, not the dense ObservableSet.
TrajectoryRecord measure(const WaveAmplitude& f, Real t = 0);

/// Expectations through the dense matrices (slow, independent route).
TrajectoryRecord measure(const WaveAmplitude& f, const ObservableSet& obs, Real t = 0);

/// Records at each requested time. Throws std::domain_error naming the first
/// time at which <X> comes within 8 dx(t) of the seam.
std::vector<TrajectoryRecord> trajectory(const WaveAmplitude& f0, std::span<const Real> times);

struct EhrenfestReport {
    Real width_residual;        ///< max |d<X^2>/dt - (2/m)<C>| / max |(2/m)<C>|
    Real correlation_residual;  ///< max |d<C>/dt - 2<H>| / max |2<H>|
    std::size_t samples;        ///< interior points used
};

/// Central differences on uniformly spaced records. Throws
/// std::invalid_argument for fewer than 3 records or nonuniform spacing.
EhrenfestReport ehrenfest_residuals(std::span<const TrajectoryRecord> records, Real mass);

/// sigma0^2 (1 + (t / (2 m sigma0^2))^2)
Real free_gaussian_width2(Real sigma0, Real mass, Real t);

}  // namespace qfock
