// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only oracles. Nothing here calls into the code paths it is used to
// check: ladder matrices are built from Kronecker products, transforms by
// direct O(M^2) sums.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qfock/fock.hpp"
#include "qfock/lattice.hpp"
#include "qfock/wick.hpp"

namespace oracle {

using qfock::CMatrix;
using qfock::Complex;
using qfock::CVector;
using qfock::Real;

inline Eigen::Index local_dim(const qfock::ModeSpace& s) { return s.nmax() + 1; }

inline Eigen::Index dense_dim(const qfock::ModeSpace& s) {
    Eigen::Index d = 1;
    for (std::size_t i = 0; i < s.slot_count(); ++i) d *= local_dim(s);
    return d;
}

/// Slot 0 is the most significant digit.
inline Eigen::Index dense_index(const qfock::ModeSpace& s, const qfock::Occupation& occ) {
    Eigen::Index idx = 0;
    for (auto n : occ) idx = idx * local_dim(s) + n;
    return idx;
}

inline CVector to_dense(const qfock::FockVector& v) {
    CVector out = CVector::Zero(dense_dim(v.space()));
    for (const auto& [occ, a] : v.terms()) out[dense_index(v.space(), occ)] = a;
    return out;
}

/// Annihilation matrix of a slot: I (x) .. (x) b (x) .. (x) I for bosons,
/// Z (x) .. (x) Z (x) sigma- (x) I .. for fermions.
inline CMatrix lowering(const qfock::ModeSpace& s, std::size_t slot) {
    const Eigen::Index d = local_dim(s);
    CMatrix b = CMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<Real>(n));
    CMatrix z = CMatrix::Identity(d, d);
    if (s.statistics() == qfock::Statistics::Fermi) z(1, 1) = -1;

    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < s.slot_count(); ++i) {
        CMatrix factor = i < slot ? z : (i == slot ? b : CMatrix::Identity(d, d));
        CMatrix next = Eigen::kroneckerProduct(out, factor);
        out = std::move(next);
    }
    return out;
}

/// g_k = sum_j f_j exp(-i p_k x_j) / sqrt(M) by direct summation.
inline CVector brute_dft(const qfock::LatticeSpec& lat, const CVector& f) {
    const auto M = static_cast<Eigen::Index>(lat.num_sites);
    CVector g = CVector::Zero(M);
    for (Eigen::Index i = 0; i < M; ++i)
        for (Eigen::Index j = 0; j < M; ++j) {
            const Real phase = -lat.momentum(static_cast<std::size_t>(i)) * lat.position(static_cast<std::size_t>(j));
            g[i] += f[j] * std::polar(1.0, phase) / std::sqrt(static_cast<Real>(M));
        }
    return g;
}

/// Singular values of a 2x2 matrix from the characteristic polynomial of M M^dag.
inline std::pair<Real, Real> singular_values_2x2(const CMatrix& m) {
    const Real fro2 = m.squaredNorm();
    const Real det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const Real disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4 * det * det));
    return {std::sqrt((fro2 + disc) / 2), std::sqrt(std::max(0.0, (fro2 - disc) / 2))};
}

inline CVector random_unit(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<Real> g;
    CVector v(n);
    for (auto& z : v) z = Complex(g(rng), g(rng));
    return v.normalized();
}

/// Random unitary from the QR factorization of a complex Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<Real> g;
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<CMatrix> qr(a);
    return qr.householderQ() * CMatrix::Identity(n, n);
}

/// Random sparse state: `terms` random basis states with Gaussian amplitudes,
/// each occupation bounded by `cap`.
inline qfock::FockVector random_state(std::mt19937_64& rng, const qfock::ModeSpace& s, int terms, int cap) {
    std::uniform_int_distribution<int> occ(0, cap);
    std::normal_distribution<Real> g;
    qfock::FockVector v(s);
    for (int t = 0; t < terms; ++t) {
        qfock::Occupation o(s.slot_count());
        for (auto& n : o) n = static_cast<std::uint8_t>(occ(rng));
        v.accumulate(o, Complex(g(rng), g(rng)));
    }
    return v.normalized();
}

/// <vacuum, s vacuum> by applying the ladder operators right to left on a
/// concrete mode assignment.
inline Complex vacuum_expectation(const qfock::wick::OperatorString& s, const std::map<std::string, std::size_t>& modes,
                                  std::size_t num_modes, int nmax = 8) {
    qfock::ModeSpace space(num_modes, s.statistics, nmax);
    qfock::FockVector v = qfock::vacuum(space);
    for (auto it = s.symbols.rbegin(); it != s.symbols.rend(); ++it) {
        const std::size_t m = modes.at(it->label);
        v = it->kind == qfock::wick::Kind::Create ? qfock::create(v, m) : qfock::annihilate(v, m);
    }
    return qfock::inner(qfock::vacuum(space), v);
}

/// Random string of `length` symbols over the first `labels` of {x, y, z, w}.
inline qfock::wick::OperatorString random_string(std::mt19937_64& rng, qfock::Statistics stats, int length, int labels) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::uniform_int_distribution<int> kind(0, 1), label(0, labels - 1);
    qfock::wick::OperatorString s{stats, {}};
    for (int i = 0; i < length; ++i)
        s.symbols.push_back({kind(rng) ? qfock::wick::Kind::Create : qfock::wick::Kind::Annihilate, names[label(rng)]});
    return s;
}

}  // namespace oracle
