// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/qinfo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qfock {

namespace {

constexpr Real kStateTolerance = 1e-10;

void require_unit(Real norm, const char* what) {
    if (std::abs(norm - 1) > kNormTolerance)
        throw std::domain_error(std::string(what) + ": input is not normalized (norm " + std::to_string(norm) + ")");
}

}  // namespace

BipartiteState::BipartiteState(CMatrix amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw std::invalid_argument("BipartiteState: empty amplitude matrix");
    require_unit(amplitudes_.norm(), "BipartiteState");
}

CVector BipartiteState::flattened() const {
    CVector v(amplitudes_.size());
    for (Eigen::Index a = 0; a < dim_a(); ++a)
        for (Eigen::Index b = 0; b < dim_b(); ++b) v[a * dim_b() + b] = amplitudes_(a, b);
    return v;
}

BipartiteState BipartiteState::product(const CVector& a, const CVector& b) {
    return BipartiteState(a * b.transpose());
}

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw std::invalid_argument("DensityMatrix: must be square and nonempty");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance)
        throw std::domain_error("DensityMatrix: not Hermitian");
    if (std::abs(trace() - 1) > kStateTolerance) throw std::domain_error("DensityMatrix: trace is not 1");
    if (min_eigenvalue() < -kStateTolerance) throw std::domain_error("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    require_unit(psi.norm(), "DensityMatrix::pure");
    return DensityMatrix(psi * psi.adjoint());
}

Real DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

Real DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Real DensityMatrix::von_neumann_entropy() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
    Real s = 0;
    for (Real l : es.eigenvalues())
        if (l > 0) s -= l * std::log(l);
    return s;
}

Real DensityMatrix::max_off_diagonal() const {
    Real m = 0;
    for (Eigen::Index i = 0; i < dim(); ++i)
        for (Eigen::Index j = 0; j < dim(); ++j)
            if (i != j) m = std::max(m, std::abs(rho_(i, j)));
    return m;
}

std::vector<Real> born_distribution(std::span<const Complex> f) {
    std::vector<Real> rho;
    rho.reserve(f.size());
    Real total = 0;
    for (auto z : f) {
        rho.push_back(std::norm(z));
        total += rho.back();
    }
    require_unit(std::sqrt(total), "born_distribution");
    return rho;
}

BipartiteState entangled_pair(const CVector& phi1, const CVector& phi2, const CVector& psi1, const CVector& psi2) {
    require_unit(phi1.norm(), "entangled_pair");
    require_unit(phi2.norm(), "entangled_pair");
    require_unit(psi1.norm(), "entangled_pair");
    require_unit(psi2.norm(), "entangled_pair");
    if (phi1.size() != phi2.size() || psi1.size() != psi2.size())
        throw std::invalid_argument("entangled_pair: dimension mismatch");
    CMatrix m = phi1 * psi1.transpose() + phi2 * psi2.transpose();
    const Real n = m.norm();
    if (n < 1e-12) throw std::domain_error("entangled_pair: superposition vanishes");
    return BipartiteState(m / n);
}

DensityMatrix reduced_density(const BipartiteState& s, Subsystem keep) {
    const CMatrix& m = s.amplitudes();
    if (keep == Subsystem::A) return DensityMatrix(m * m.adjoint());
    return DensityMatrix(m.transpose() * m.conjugate());
}

DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep) {
    if (dim_a * dim_b != rho.dim()) throw std::invalid_argument("partial_trace: dimensions do not match");
    const CMatrix& r = rho.matrix();
    if (keep == Subsystem::A) {
        CMatrix out = CMatrix::Zero(dim_a, dim_a);
        for (Eigen::Index a = 0; a < dim_a; ++a)
            for (Eigen::Index a2 = 0; a2 < dim_a; ++a2)
                for (Eigen::Index b = 0; b < dim_b; ++b) out(a, a2) += r(a * dim_b + b, a2 * dim_b + b);
        return DensityMatrix(out);
    }
    CMatrix out = CMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index b = 0; b < dim_b; ++b)
        for (Eigen::Index b2 = 0; b2 < dim_b; ++b2)
            for (Eigen::Index a = 0; a < dim_a; ++a) out(b, b2) += r(a * dim_b + b, a * dim_b + b2);
    return DensityMatrix(out);
}

SchmidtDecomposition schmidt(const BipartiteState& s) {
    Eigen::JacobiSVD<CMatrix> svd(s.amplitudes());
    SchmidtDecomposition out{svd.singularValues(), 0};
    for (Real c : out.coefficients) {
        const Real w = c * c;
        if (w > 0) out.entropy -= w * std::log(w);
    }
    return out;
}

Eigen::Index schmidt_rank(const BipartiteState& s, Real tol) {
    const RVector c = schmidt(s).coefficients;
    return static_cast<Eigen::Index>((c.array() > tol).count());
}

ConditionalState conditional_state(const BipartiteState& s, const CVector& outcome) {
    if (outcome.size() != s.dim_a()) throw std::invalid_argument("conditional_state: outcome has the wrong dimension");
    require_unit(outcome.norm(), "conditional_state");
    CVector b = (outcome.adjoint() * s.amplitudes()).transpose();
    const Real p = b.squaredNorm();
    if (p <= 1e-14) throw std::domain_error("conditional_state: outcome has zero probability");
    return {b / std::sqrt(p), p};
}

void MeasurementModel::validate() const {
    if (amplitudes.empty()) throw std::invalid_argument("MeasurementModel: no outcomes");
    if (!eigenvalues.empty() && eigenvalues.size() != amplitudes.size())
        throw std::invalid_argument("MeasurementModel: eigenvalue and amplitude counts differ");
    if (!(apparatus_energy > 0)) throw std::invalid_argument("MeasurementModel: apparatus energy must be positive");
    born_distribution(amplitudes);
}

BipartiteState premeasure(const MeasurementModel& model) {
    model.validate();
    const auto n = static_cast<Eigen::Index>(model.amplitudes.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index l = 0; l < n; ++l) m(l, l) = model.amplitudes[static_cast<std::size_t>(l)];
    return BipartiteState(m);
}

DensityMatrix decohere(const BipartiteState& s, const CMatrix& pointer) {
    const Eigen::Index db = s.dim_b();
    if (pointer.rows() != db || pointer.cols() != db)
        throw std::invalid_argument("decohere: pointer basis must be a square matrix over the apparatus space");
    if ((pointer.adjoint() * pointer - CMatrix::Identity(db, db)).cwiseAbs().maxCoeff() > kStateTolerance)
        throw std::invalid_argument("decohere: pointer basis is not orthonormal");

    const Eigen::Index dim = s.dim_a() * db;
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (Eigen::Index l = 0; l < db; ++l) {
        const CMatrix projector = pointer.col(l) * pointer.col(l).adjoint();
        const CMatrix branch = s.amplitudes() * projector.transpose();
        CVector v(dim);
        for (Eigen::Index a = 0; a < s.dim_a(); ++a)
            for (Eigen::Index b = 0; b < db; ++b) v[a * db + b] = branch(a, b);
        rho += v * v.adjoint();
    }
    return DensityMatrix(rho);
}

DensityMatrix decohere(const BipartiteState& s) {
    return decohere(s, CMatrix::Identity(s.dim_b(), s.dim_b()));
}

Real decoherence_time(Real apparatus_energy) {
    if (!(apparatus_energy > 0)) throw std::invalid_argument("decoherence_time: energy must be positive");
    return 1.0 / apparatus_energy;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<std::uint64_t> sample_outcomes(const DensityMatrix& rho, std::uint64_t n, std::uint64_t seed, unsigned threads) {
    if (n == 0) throw std::invalid_argument("sample_outcomes: need at least one draw");
    if (rho.max_off_diagonal() > 1e-12)
        throw std::invalid_argument("sample_outcomes: density matrix is not diagonal; decohere it first");

    const RVector p = rho.diagonal().cwiseMax(0.0);
    const auto k = static_cast<std::size_t>(p.size());
    std::vector<Real> cdf(k);
    Real acc = 0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += p[static_cast<Eigen::Index>(i)];
        cdf[i] = acc;
        if (p[static_cast<Eigen::Index>(i)] > 0) last_positive = i;
    }
    for (auto& c : cdf) c /= acc;

    constexpr std::uint64_t chunk = 65536;
    const std::uint64_t chunks = (n + chunk - 1) / chunk;

    auto run_chunk = [&](std::uint64_t c) {
        std::vector<std::uint64_t> counts(k, 0);
        std::mt19937_64 rng(substream_seed(seed, c));
        const std::uint64_t draws = std::min(chunk, n - c * chunk);
        for (std::uint64_t d = 0; d < draws; ++d) {
            const Real u = static_cast<Real>(rng() >> 11) * 0x1.0p-53;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
            if (idx > last_positive) idx = last_positive;
            ++counts[idx];
        }
        return counts;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::vector<std::uint64_t>> partial(chunks);
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < std::min<std::uint64_t>(threads, chunks); ++t)
        jobs.push_back(std::async(std::launch::async, [&, t] {
            for (std::uint64_t c = t; c < chunks; c += threads) partial[c] = run_chunk(c);
        }));
    for (auto& j : jobs) j.get();

    std::vector<std::uint64_t> counts(k, 0);
    for (const auto& part : partial)
        for (std::size_t i = 0; i < k; ++i) counts[i] += part[i];
    return counts;
}

}  // namespace qfock
