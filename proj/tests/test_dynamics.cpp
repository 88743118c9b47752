// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qfock/dynamics.hpp"

using namespace qfock;

namespace {

LatticeSpec free_lattice(std::size_t M, Real dx = 1.0, Real m = 1.0) {
    return LatticeSpec{M, dx, m, Dispersion::Nonrelativistic};
}

// Continuum free Gaussian: <X^2>(t) - <X>^2 is exactly quadratic in t,
//   sigma0^2 - chirp t / m + (1 + chirp^2) t^2 / (4 m^2 sigma0^2).
Real chirped_width2(Real sigma0, Real chirp, Real m, Real t) {
    return sigma0 * sigma0 - chirp * t / m + (1 + chirp * chirp) * t * t / (4 * m * m * sigma0 * sigma0);
}

}  // namespace

TEST_CASE("observables are Hermitian and act as expected") {
    LatticeSpec lat = free_lattice(32, 0.5, 2.0);
    ObservableSet obs = build_observables(lat);
    for (const CMatrix* A : {&obs.X, &obs.P, &obs.H, &obs.C}) CHECK((*A - A->adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    for (std::size_t k = 0; k < 32; ++k) {
        const CVector w = plane_wave(lat, k).values;
        CHECK((obs.P * w - lat.momentum(k) * w).norm() < 1e-12);
        CHECK((obs.H * w - lat.energy(lat.momentum(k)) * w).norm() < 1e-12);
    }
    for (std::size_t j = 0; j < 32; ++j) {
        const CVector e = point_source(lat, j).values;
        CHECK((obs.X * e - lat.position(j) * e).norm() < 1e-15);
    }
    CHECK_THROWS_AS(build_observables(LatticeSpec{8, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_observables(LatticeSpec{8, 1.0, 1.0, Dispersion::Relativistic}), std::invalid_argument);
}

TEST_CASE("[X, C] = iX holds away from the seam") {
    LatticeSpec lat = free_lattice(128, 0.5);
    ObservableSet obs = build_observables(lat);
    const CMatrix comm = obs.X * obs.C - obs.C * obs.X;
    const CVector f = gaussian_packet(lat, 0.0, 0.4, 2.0, 0.3).values;
    const CVector lhs = comm * f, rhs = Complex(0, 1) * (obs.X * f);
    CHECK((lhs - rhs).norm() / rhs.norm() < 1e-6);

    // Near the seam the lattice commutator is badly wrong.
    CVector edge = point_source(lat, 1).values;
    CHECK(((comm * edge) - Complex(0, 1) * (obs.X * edge)).norm() > 1.0);
}

TEST_CASE("seam distance") {
    LatticeSpec lat = free_lattice(64);
    CHECK(seam_distance(lat, 0.0) == 32.0);
    CHECK(seam_distance(lat, 31.0) == 1.0);
    CHECK(seam_distance(lat, -32.0) == 0.0);
    CHECK(seam_distance(lat, 40.0) == doctest::Approx(8.0));
}

TEST_CASE("gaussian packet moments") {
    LatticeSpec lat = free_lattice(256, 0.5);
    for (Real chirp : {-1.0, 0.0, 0.5, 2.0}) {
        const Real sigma = 4.0;
        WaveAmplitude f = gaussian_packet(lat, 3.0, 0.7, sigma, chirp);
        TrajectoryRecord r = measure(f);
        CHECK(r.mean_x == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(r.mean_p == doctest::Approx(0.7).epsilon(1e-6));
        CHECK(r.dx == doctest::Approx(sigma).epsilon(1e-9));
        CHECK(r.dp == doctest::Approx(std::sqrt(1 + chirp * chirp) / (2 * sigma)).epsilon(1e-6));
        // Centred correlation: <C> - <X><P> = -chirp / 2.
        CHECK(r.mean_c - r.mean_x * r.mean_p == doctest::Approx(-chirp / 2).epsilon(1e-6));
        CHECK(r.dx * r.dp >= 0.5 * (1 - 1e-9));
        if (chirp == 0.0) CHECK(r.dx * r.dp == doctest::Approx(0.5).epsilon(1e-9));
    }
    CHECK_THROWS_AS(gaussian_packet(lat, 0.0, 0.0, 0.9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_packet(lat, 40.0, 0.0, 4.0, 0.0), std::invalid_argument);
    // M = 64, sigma0 = 4 dx, x0 = 0 sits exactly 8 sigma0 from the seam.
    CHECK_NOTHROW(gaussian_packet(free_lattice(64), 0.0, 0.0, 4.0, 0.0));
}

TEST_CASE("dense and FFT routes agree") {
    std::mt19937_64 rng(5);
    LatticeSpec lat = free_lattice(48, 0.75, 1.5);
    ObservableSet obs = build_observables(lat);
    for (int i = 0; i < 10; ++i) {
        WaveAmplitude f{lat, oracle::random_unit(rng, 48)};
        TrajectoryRecord a = measure(f), b = measure(f, obs);
        CHECK(a.mean_x == doctest::Approx(b.mean_x).epsilon(1e-12));
        CHECK(a.mean_x2 == doctest::Approx(b.mean_x2).epsilon(1e-12));
        CHECK(std::abs(a.mean_p - b.mean_p) < 1e-12);
        CHECK(a.mean_h == doctest::Approx(b.mean_h).epsilon(1e-12));
        CHECK(std::abs(a.mean_c - b.mean_c) < 1e-11);
        CHECK(a.dp == doctest::Approx(b.dp).epsilon(1e-12));
    }
    CHECK_THROWS_AS(measure(WaveAmplitude{lat, CVector::Ones(48)}), std::domain_error);
}

TEST_CASE("evolve") {
    LatticeSpec lat = free_lattice(64, 0.5);
    WaveAmplitude f = gaussian_packet(lat, 0.0, 0.5, 2.0, 0.0);
    CHECK((evolve(f, 0.0).values - f.values).norm() == 0.0);
    CHECK(evolve(f, 3.7).values.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK((evolve(evolve(f, 1.2), -1.2).values - f.values).norm() < 1e-13);
    CHECK((evolve(evolve(f, 0.4), 0.9).values - evolve(f, 1.3).values).norm() < 1e-13);

    // Plane waves only pick up a phase.
    WaveAmplitude w = plane_wave(lat, 40);
    const Complex phase = std::polar(1.0, -lat.energy(lat.momentum(40)) * 2.5);
    CHECK((evolve(w, 2.5).values - phase * w.values).norm() < 1e-13);

    // Dense matrix exponential route.
    ObservableSet obs = build_observables(lat);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(obs.H);
    const CMatrix U = es.eigenvectors() *
                      es.eigenvalues().unaryExpr([](Real e) { return std::polar(1.0, -e * 2.5); }).asDiagonal() *
                      es.eigenvectors().adjoint();
    CHECK((evolve(f, 2.5).values - U * f.values).norm() < 1e-11);
}

TEST_CASE("free spreading follows the continuum width law") {
    const Real sigma = 6.0, m = 1.0;
    LatticeSpec lat = free_lattice(512, 0.5, m);
    for (Real chirp : {0.0, 1.0}) {
        WaveAmplitude f = gaussian_packet(lat, 0.0, 0.0, sigma, chirp);
        for (Real t : {0.0, 10.0, 36.0, 72.0}) {
            TrajectoryRecord r = measure(evolve(f, t), t);
            CHECK(r.dx * r.dx == doctest::Approx(chirped_width2(sigma, chirp, m, t)).epsilon(1e-6));
            CHECK(r.dx * r.dp >= 0.5 * (1 - 1e-9));
        }
        if (chirp == 0.0)
            for (Real t : {5.0, 50.0})
                CHECK(chirped_width2(sigma, 0.0, m, t) == doctest::Approx(free_gaussian_width2(sigma, m, t)).epsilon(1e-14));
    }
}

TEST_CASE("trajectory and ehrenfest residuals") {
    LatticeSpec lat = free_lattice(256, 1.0);
    WaveAmplitude f = gaussian_packet(lat, 0.0, 0.0, 8.0, 1.0);
    std::vector<Real> times;
    for (int i = 0; i <= 40; ++i) times.push_back(1e-3 * i);
    auto recs = trajectory(f, times);
    REQUIRE(recs.size() == times.size());
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(recs[i].t == times[i]);
    // Energy is conserved.
    for (const auto& r : recs) CHECK(r.mean_h == doctest::Approx(recs[0].mean_h).epsilon(1e-12));

    EhrenfestReport rep = ehrenfest_residuals(recs, 1.0);
    CHECK(rep.samples == 39);
    CHECK(rep.width_residual < 1e-6);
    CHECK(rep.correlation_residual < 1e-6);

    // <C>(t) - <C>(0) = 2 <H> t for a free particle.
    for (const auto& r : trajectory(f, std::vector<Real>{0.0, 32.0, 64.0, 96.0}))
        CHECK(r.mean_c - recs[0].mean_c == doctest::Approx(2 * recs[0].mean_h * r.t).epsilon(1e-6));

    SUBCASE("errors") {
        CHECK_THROWS_AS(ehrenfest_residuals(std::span(recs).first(2), 1.0), std::invalid_argument);
        auto bad = recs;
        bad[3].t += 1e-4;
        CHECK_THROWS_AS(ehrenfest_residuals(bad, 1.0), std::invalid_argument);
    }
    SUBCASE("seam is reported with the offending time") {
        WaveAmplitude moving = gaussian_packet(lat, 0.0, 1.0, 8.0, 0.0);
        try {
            trajectory(moving, std::vector<Real>{0.0, 40.0, 80.0});
            FAIL("expected the seam check to fire");
        } catch (const std::domain_error& e) {
            CHECK(std::string(e.what()).find("t = 80") != std::string::npos);
        }
    }
}
