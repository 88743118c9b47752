// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qinfo.hpp
 * @brief Bipartite pure states, density matrices, the premeasurement
 *        entanglement with a pointer and its decoherence into a mixture.
 *
 * Composite index convention: |a> (x) |b>  ->  a * d_B + b.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qfock/types.hpp"

namespace qfock {

enum class Subsystem { A, B };

/// Pure state of H_A (x) H_B stored as a d_A x d_B amplitude matrix.
class BipartiteState {
public:
    /// Throws std::domain_error unless the Frobenius norm is 1 within 1e-10.
    explicit BipartiteState(CMatrix amplitudes);

    const CMatrix& amplitudes() const { return amplitudes_; }
    Eigen::Index dim_a() const { return amplitudes_.rows(); }
    Eigen::Index dim_b() const { return amplitudes_.cols(); }

    /// Column vector of length d_A * d_B in the composite convention.
    CVector flattened() const;

    static BipartiteState product(const CVector& a, const CVector& b);

private:
    CMatrix amplitudes_;
};

/// Hermitian, positive semidefinite, unit trace (checked to 1e-10).
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix rho);

    static DensityMatrix pure(const CVector& psi);

    const CMatrix& matrix() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

    Real trace() const { return rho_.trace().real(); }
    Real purity() const;
    Real min_eigenvalue() const;
    Real von_neumann_entropy() const;
    RVector diagonal() const { return rho_.diagonal().real(); }
    /// Largest |rho_ij| with i != j.
    Real max_off_diagonal() const;

private:
    CMatrix rho_;
};

/// rho(lambda) = |f(lambda)|^2. Throws std::domain_error for unnormalized f.
std::vector<Real> born_distribution(std::span<const Complex> f);

/// Normalized phi1 (x) psi1 + phi2 (x) psi2. Throws std::domain_error for
/// unnormalized inputs or a vanishing superposition.
BipartiteState entangled_pair(const CVector& phi1, const CVector& phi2, const CVector& psi1, const CVector& psi2);

DensityMatrix reduced_density(const BipartiteState& s, Subsystem keep);

/// Partial trace of a density matrix on H_A (x) H_B.
DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep);

struct SchmidtDecomposition {
    RVector coefficients;  ///< nonincreasing, nonnegative
    Real entropy;          ///< -sum c^2 ln c^2
};

SchmidtDecomposition schmidt(const BipartiteState& s);

/// Number of Schmidt coefficients above tol.
Eigen::Index schmidt_rank(const BipartiteState& s, Real tol = 1e-12);

struct ConditionalState {
    CVector state;
    Real probability;
};

/// State of B after finding A in `outcome`. Throws std::domain_error when the
/// outcome probability is at most 1e-14.
ConditionalState conditional_state(const BipartiteState& s, const CVector& outcome);

struct MeasurementModel {
    std::vector<Real> eigenvalues;
    std::vector<Complex> amplitudes;  ///< f(lambda)
    Real apparatus_energy = 1.0;      ///< E_A

    /// Throws std::invalid_argument for size mismatches or E_A <= 0 and
    /// std::domain_error for unnormalized amplitudes.
    void validate() const;
};

/// sum_lambda f(lambda) phi_lambda (x) pointer_lambda with standard bases.
BipartiteState premeasure(const MeasurementModel& model);

/// Dephasing of the apparatus in the pointer basis (columns of `pointer`):
/// rho -> sum_l (1 (x) P_l) rho (1 (x) P_l). For a premeasured state this is
/// sum_l |f(l)|^2 projector(phi_l (x) pointer_l).
DensityMatrix decohere(const BipartiteState& s, const CMatrix& pointer);
DensityMatrix decohere(const BipartiteState& s);

/// hbar / E_A with hbar = 1. Throws std::invalid_argument for E_A <= 0.
Real decoherence_time(Real apparatus_energy);

/// Name of the sampling generator, recorded in run metadata.
inline constexpr const char* kSamplerName = "mt19937_64/splitmix64-substreams/chunk=65536";

/// Seed of substream `index` derived from `seed` with the splitmix64 finalizer.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// n draws from the diagonal of rho. Draws are split into chunks of 65536,
/// chunk c drawing from mt19937_64(substream_seed(seed, c)), so the counts do
/// not depend on the thread count. Throws std::invalid_argument when rho has
/// an off-diagonal entry above 1e-12 or n == 0.
std::vector<std::uint64_t> sample_outcomes(const DensityMatrix& rho, std::uint64_t n, std::uint64_t seed,
                                           unsigned threads = 0);

}  // namespace qfock
