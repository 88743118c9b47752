// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file field.hpp
 * @brief Field operators on a lattice: one mode per site, Psi(x) = A_x.
 */

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/lattice.hpp"

namespace qfock {

/// sum_x f(x) Psi^dag(x) vacuum. The mode space needs one mode per site.
FockVector prepare_one_particle(const WaveAmplitude& f, const ModeSpace& space);

struct GeneralStateSpec {
    /// Site tuples in nondecreasing order mapped to F_n(x_1..x_n). The empty
    /// tuple carries F_0.
    std::map<std::vector<std::size_t>, Complex> amplitudes;
    int max_sector = 4;
};

/// sum_n sum_{x} F_n(x) Psi^dag(x_1)...Psi^dag(x_n) vacuum, normalized.
/// Throws std::invalid_argument for unsorted tuples, sites out of range, or
/// tuples longer than max_sector; std::domain_error if the result is null.
FockVector prepare_general(const GeneralStateSpec& spec, const ModeSpace& space);

/// <v, Psi^dag(x) Psi(x) v>.
Real number_density(const FockVector& v, std::size_t x);

/// <v, Psi(x) v>.
Complex field_expectation(const FockVector& v, std::size_t x);

/// Product of truncated coherent states, one amplitude per mode. Each factor
/// is renormalized after truncation. Throws std::invalid_argument for fermions
/// and std::domain_error when a mode's discarded Poisson weight exceeds 1e-8.
FockVector coherent_state(std::span<const Complex> mode_amplitudes, const ModeSpace& space);

/// Smallest nmax keeping the discarded Poisson weight of |alpha|^2 below 1e-8.
int coherent_truncation(Real alpha_abs);

/// || (A_mode - alpha) v ||
Real eigen_residual(const FockVector& v, std::size_t mode, Complex alpha);

/// || Psi Psi^dag v -/+ Psi^dag Psi v - v || at site x (minus for bosons).
/// Throws std::domain_error if a bosonic component sits at nmax on x.
Real identity_resolution_residual(const FockVector& v, std::size_t x);

/// c-number commutator [Phi(t, x), Phi^dag(t', y)] of the free complex scalar
/// field as the mode sum
///
///     (1/M) sum_k (1 / 2 w_k) (e^{i(p_k dx - w_k dt)} - e^{-i(p_k dx - w_k dt)})
///
/// where the second (antiparticle) term is present only when requested. The
/// zero mode is dropped when w_0 = 0 (massless case).
Complex pauli_jordan(const LatticeSpec& lattice, Real dt, Real dx, bool include_antiparticles);

/// True when pauli_jordan drops the k = 0 mode for this lattice.
bool excludes_zero_mode(const LatticeSpec& lattice);

/// Sample-grid rule for "spacelike" on a lattice, where the light cone is
/// smeared by a front that widens with |dt|: every nonzero separation at
/// dt = 0, otherwise |dx| >= |dt| + margin.
bool spacelike_sample(Real dt, Real dx, Real margin = 3.0);

struct CommutatorSample {
    Real dt;
    Real dx;
    Complex with_antiparticles;
    Complex without_antiparticles;
};

/// Evaluates every (dt, dx) pair, dt-major. Work is split across threads but
/// the output order is fixed.
std::vector<CommutatorSample> commutator_sweep(const LatticeSpec& lattice, std::span<const Real> dts,
                                               std::span<const Real> dxs, unsigned threads = 0);

}  // namespace qfock
