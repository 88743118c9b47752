// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace qfock {

const char* to_string(Dispersion d) {
    switch (d) {
        case Dispersion::Nonrelativistic: return "nonrelativistic";
        case Dispersion::Relativistic: return "relativistic";
        case Dispersion::LatticeRelativistic: return "lattice-relativistic";
    }
    return "unknown";
}

void LatticeSpec::validate() const {
    if (num_sites < 2 || num_sites % 2 != 0) throw std::invalid_argument("LatticeSpec: num_sites must be even and >= 2");
    if (!(spacing > 0)) throw std::invalid_argument("LatticeSpec: spacing must be positive");
    if (!(mass >= 0)) throw std::invalid_argument("LatticeSpec: mass must be nonnegative");
}

Real LatticeSpec::position(std::size_t j) const {
    return (static_cast<Real>(j) - static_cast<Real>(num_sites / 2)) * spacing;
}

Real LatticeSpec::momentum(std::size_t i) const {
    return 2 * kPi * static_cast<Real>(momentum_number(i)) / length();
}

Real LatticeSpec::energy(Real p) const {
    switch (dispersion) {
        case Dispersion::Nonrelativistic:
            if (!(mass > 0)) throw std::domain_error("nonrelativistic energy needs mass > 0");
            return p * p / (2 * mass);
        case Dispersion::Relativistic: return std::sqrt(mass * mass + p * p);
        case Dispersion::LatticeRelativistic: {
            const Real s = 2 / spacing * std::sin(p * spacing / 2);
            return std::sqrt(mass * mass + s * s);
        }
    }
    return 0;
}

RVector LatticeSpec::positions() const {
    RVector x(static_cast<Eigen::Index>(num_sites));
    for (std::size_t j = 0; j < num_sites; ++j) x[static_cast<Eigen::Index>(j)] = position(j);
    return x;
}

RVector LatticeSpec::momenta() const {
    RVector p(static_cast<Eigen::Index>(num_sites));
    for (std::size_t i = 0; i < num_sites; ++i) p[static_cast<Eigen::Index>(i)] = momentum(i);
    return p;
}

RVector LatticeSpec::energies() const {
    RVector e(static_cast<Eigen::Index>(num_sites));
    for (std::size_t i = 0; i < num_sites; ++i) e[static_cast<Eigen::Index>(i)] = energy(momentum(i));
    return e;
}

Complex overlap(const LatticeSpec& lattice, std::size_t x_index, std::size_t p_index) {
    if (x_index >= lattice.num_sites || p_index >= lattice.num_sites)
        throw std::out_of_range("overlap: index outside the lattice");
    // p x = 2 pi k (j - M/2) / M, reduced mod M to keep the phase small
    const long M = static_cast<long>(lattice.num_sites);
    const long k = lattice.momentum_number(p_index);
    const long j = static_cast<long>(x_index) - M / 2;
    const long r = ((k * j) % M + M) % M;
    const Real phase = -2 * kPi * static_cast<Real>(r) / static_cast<Real>(M);
    return std::polar(1.0 / std::sqrt(static_cast<Real>(M)), phase);
}

namespace {

void check_size(const LatticeSpec& lattice, const CVector& values, const char* what) {
    lattice.validate();
    if (static_cast<std::size_t>(values.size()) != lattice.num_sites)
        throw std::invalid_argument(std::string(what) + ": value count does not match the lattice");
}

}  // namespace

// g_k = (-1)^k DFT[k mod M] / sqrt(M), since p_k x_j = 2 pi k j / M - pi k.
MomentumAmplitude to_momentum(const WaveAmplitude& f) {
    check_size(f.lattice, f.values, "to_momentum");
    const std::size_t M = f.lattice.num_sites;
    std::vector<Complex> in(f.values.data(), f.values.data() + f.values.size());
    std::vector<Complex> out;
    Eigen::FFT<Real> fft;
    fft.fwd(out, in);

    const Real scale = 1.0 / std::sqrt(static_cast<Real>(M));
    MomentumAmplitude g{f.lattice, CVector(static_cast<Eigen::Index>(M))};
    for (std::size_t i = 0; i < M; ++i) {
        const long k = f.lattice.momentum_number(i);
        const std::size_t src = static_cast<std::size_t>((k + static_cast<long>(M)) % static_cast<long>(M));
        const Real sign = (k & 1) ? -1.0 : 1.0;
        g.values[static_cast<Eigen::Index>(i)] = sign * scale * out[src];
    }
    return g;
}

WaveAmplitude from_momentum(const MomentumAmplitude& g) {
    check_size(g.lattice, g.values, "from_momentum");
    const std::size_t M = g.lattice.num_sites;
    std::vector<Complex> in(M);
    for (std::size_t i = 0; i < M; ++i) {
        const long k = g.lattice.momentum_number(i);
        const std::size_t dst = static_cast<std::size_t>((k + static_cast<long>(M)) % static_cast<long>(M));
        const Real sign = (k & 1) ? -1.0 : 1.0;
        in[dst] = sign * g.values[static_cast<Eigen::Index>(i)];
    }
    std::vector<Complex> out;
    Eigen::FFT<Real> fft;
    fft.SetFlag(Eigen::FFT<Real>::Unscaled);
    fft.inv(out, in);

    const Real scale = 1.0 / std::sqrt(static_cast<Real>(M));
    WaveAmplitude f{g.lattice, CVector(static_cast<Eigen::Index>(M))};
    for (std::size_t j = 0; j < M; ++j) f.values[static_cast<Eigen::Index>(j)] = scale * out[j];
    return f;
}

Real squared_norm(const WaveAmplitude& f) { return f.values.squaredNorm(); }

WaveAmplitude plane_wave(const LatticeSpec& lattice, std::size_t p_index) {
    lattice.validate();
    WaveAmplitude f{lattice, CVector(static_cast<Eigen::Index>(lattice.num_sites))};
    for (std::size_t j = 0; j < lattice.num_sites; ++j) f.values[static_cast<Eigen::Index>(j)] = std::conj(overlap(lattice, j, p_index));
    return f;
}

WaveAmplitude point_source(const LatticeSpec& lattice, std::size_t x_index) {
    lattice.validate();
    if (x_index >= lattice.num_sites) throw std::out_of_range("point_source: site outside the lattice");
    WaveAmplitude f{lattice, CVector::Zero(static_cast<Eigen::Index>(lattice.num_sites))};
    f.values[static_cast<Eigen::Index>(x_index)] = 1.0;
    return f;
}

}  // namespace qfock
