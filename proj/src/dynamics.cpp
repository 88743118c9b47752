// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qfock {

namespace {

void require_free_particle(const LatticeSpec& lattice, const char* what) {
    lattice.validate();
    if (lattice.dispersion != Dispersion::Nonrelativistic)
        throw std::invalid_argument(std::string(what) + ": needs the nonrelativistic dispersion");
    if (!(lattice.mass > 0)) throw std::invalid_argument(std::string(what) + ": needs mass > 0");
}

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

}  // namespace

ObservableSet build_observables(const LatticeSpec& lattice) {
    require_free_particle(lattice, "build_observables");
    const Eigen::Index M = as_index(lattice.num_sites);

    CMatrix F(M, M);
    for (Eigen::Index i = 0; i < M; ++i)
        for (Eigen::Index j = 0; j < M; ++j) F(i, j) = overlap(lattice, static_cast<std::size_t>(j), static_cast<std::size_t>(i));

    const RVector p = lattice.momenta();
    ObservableSet obs;
    obs.X = lattice.positions().cast<Complex>().asDiagonal();
    obs.P = F.adjoint() * p.cast<Complex>().asDiagonal() * F;
    obs.H = F.adjoint() * (p.array().square() / (2 * lattice.mass)).matrix().cast<Complex>().asDiagonal() * F;
    obs.C = 0.5 * (obs.X * obs.P + obs.P * obs.X);
    return obs;
}

Real seam_distance(const LatticeSpec& lattice, Real x) {
    const Real L = lattice.length();
    Real u = std::fmod(x + L / 2, L);
    if (u < 0) u += L;
    return std::min(u, L - u);
}

WaveAmplitude gaussian_packet(const LatticeSpec& lattice, Real x0, Real p0, Real sigma0, Real chirp) {
    lattice.validate();
    if (sigma0 < 2 * lattice.spacing * (1 - 1e-12))
        throw std::invalid_argument("gaussian_packet: sigma0 must be at least two lattice spacings");
    if (seam_distance(lattice, x0) < 8 * sigma0 * (1 - 1e-12))
        throw std::invalid_argument("gaussian_packet: packet centre lies within 8 sigma0 of the periodic seam");

    WaveAmplitude f{lattice, CVector(as_index(lattice.num_sites))};
    const Complex width(1.0, chirp);
    for (std::size_t j = 0; j < lattice.num_sites; ++j) {
        const Real x = lattice.position(j);
        const Real u = x - x0;
        f.values[as_index(j)] = std::exp(-width * (u * u) / (4 * sigma0 * sigma0) + Complex(0, p0 * x));
    }
    f.values.normalize();
    return f;
}

WaveAmplitude evolve(const WaveAmplitude& f, Real t) {
    require_free_particle(f.lattice, "evolve");
    if (t == 0) return f;
    MomentumAmplitude g = to_momentum(f);
    for (std::size_t i = 0; i < f.lattice.num_sites; ++i)
        g.values[as_index(i)] *= std::polar(1.0, -f.lattice.energy(f.lattice.momentum(i)) * t);
    return from_momentum(g);
}

TrajectoryRecord measure(const WaveAmplitude& f, Real t) {
    require_free_particle(f.lattice, "measure");
    if (std::abs(f.values.norm() - 1) > kNormTolerance) throw std::domain_error("measure: state is not normalized");

    const RVector x = f.lattice.positions();
    const RVector p = f.lattice.momenta();
    const RVector density = f.values.cwiseAbs2();

    const MomentumAmplitude g = to_momentum(f);
    const RVector pdensity = g.values.cwiseAbs2();

    MomentumAmplitude pg{g.lattice, g.values.cwiseProduct(p.cast<Complex>())};
    const CVector pf = from_momentum(pg).values;
    const CVector xf = x.cast<Complex>().cwiseProduct(f.values);

    TrajectoryRecord r{};
    r.t = t;
    r.mean_x = density.dot(x);
    r.mean_x2 = density.dot(x.cwiseAbs2());
    r.mean_p = pdensity.dot(p);
    const Real mean_p2 = pdensity.dot(p.cwiseAbs2());
    r.mean_h = mean_p2 / (2 * f.lattice.mass);
    r.mean_c = xf.dot(pf).real();  // Re <Xf, Pf> = <(XP + PX)/2>
    r.dx = std::sqrt(std::max(0.0, r.mean_x2 - r.mean_x * r.mean_x));
    r.dp = std::sqrt(std::max(0.0, mean_p2 - r.mean_p * r.mean_p));
    return r;
}

TrajectoryRecord measure(const WaveAmplitude& f, const ObservableSet& obs, Real t) {
    auto expect = [&](const CMatrix& A) { return f.values.dot(A * f.values).real(); };
    TrajectoryRecord r{};
    r.t = t;
    r.mean_x = expect(obs.X);
    r.mean_x2 = expect(obs.X * obs.X);
    r.mean_p = expect(obs.P);
    const Real mean_p2 = expect(obs.P * obs.P);
    r.mean_h = expect(obs.H);
    r.mean_c = expect(obs.C);
    r.dx = std::sqrt(std::max(0.0, r.mean_x2 - r.mean_x * r.mean_x));
    r.dp = std::sqrt(std::max(0.0, mean_p2 - r.mean_p * r.mean_p));
    return r;
}

std::vector<TrajectoryRecord> trajectory(const WaveAmplitude& f0, std::span<const Real> times) {
    std::vector<TrajectoryRecord> out;
    out.reserve(times.size());
    for (Real t : times) {
        TrajectoryRecord r = measure(evolve(f0, t), t);
        if (seam_distance(f0.lattice, r.mean_x) < 8 * r.dx) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "trajectory: packet within 8 sigma of the periodic seam at t = " << t;
            throw std::domain_error(msg.str());
        }
        out.push_back(r);
    }
    return out;
}

EhrenfestReport ehrenfest_residuals(std::span<const TrajectoryRecord> records, Real mass) {
    if (records.size() < 3) throw std::invalid_argument("ehrenfest_residuals: need at least 3 records");
    if (!(mass > 0)) throw std::invalid_argument("ehrenfest_residuals: mass must be positive");
    const Real h = records[1].t - records[0].t;
    if (!(h > 0)) throw std::invalid_argument("ehrenfest_residuals: times must increase");
    for (std::size_t i = 1; i < records.size(); ++i)
        if (std::abs((records[i].t - records[i - 1].t) - h) > 1e-6 * h)
            throw std::invalid_argument("ehrenfest_residuals: records are not uniformly spaced");

    Real width_err = 0, width_scale = 0, corr_err = 0, corr_scale = 0;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        const Real span = records[i + 1].t - records[i - 1].t;
        const Real dx2 = (records[i + 1].mean_x2 - records[i - 1].mean_x2) / span;
        const Real dc = (records[i + 1].mean_c - records[i - 1].mean_c) / span;
        const Real width_rhs = 2 / mass * records[i].mean_c;
        const Real corr_rhs = 2 * records[i].mean_h;
        width_err = std::max(width_err, std::abs(dx2 - width_rhs));
        corr_err = std::max(corr_err, std::abs(dc - corr_rhs));
        width_scale = std::max(width_scale, std::abs(width_rhs));
        corr_scale = std::max(corr_scale, std::abs(corr_rhs));
    }
    return {width_scale > 0 ? width_err / width_scale : width_err, corr_scale > 0 ? corr_err / corr_scale : corr_err,
            records.size() - 2};
}

Real free_gaussian_width2(Real sigma0, Real mass, Real t) {
    const Real s2 = sigma0 * sigma0;
    const Real r = t / (2 * mass * s2);
    return s2 * (1 + r * r);
}

}  // namespace qfock
