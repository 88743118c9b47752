// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

// Reduced-scale invariant suite (M <= 64, nmax <= 6). Every check is seeded,
// so the printed table is reproducible.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "app.hpp"
#include "qfock/dynamics.hpp"
#include "qfock/field.hpp"
#include "qfock/fock.hpp"
#include "qfock/qinfo.hpp"
#include "qfock/wick.hpp"

namespace qfock::cli {

namespace {

using Ladder = std::function<FockVector(const FockVector&, std::size_t)>;

std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

FockVector random_basis(std::mt19937_64& rng, const ModeSpace& space, int cap) {
    std::uniform_int_distribution<int> occ(0, cap);
    Occupation o(space.slot_count());
    for (auto& n : o) n = static_cast<std::uint8_t>(occ(rng));
    return FockVector::basis(space, o);
}

CheckResult check_eq3(bool drop_sign) {
    const double bose = ladder_residuals(ModeSpace(4, Statistics::Bose, 6), 200, 3).max();
    const double fermi = ladder_residuals(ModeSpace(8, Statistics::Fermi), 200, 3, !drop_sign).max();
    const double worst = std::max(bose, fermi);
    return {"eq3", worst <= 1e-12, worst, "bose " + sci(bose) + ", fermi " + sci(fermi)};
}

Complex direct_vacuum_expectation(const wick::OperatorString& s, const std::map<std::string, std::size_t>& modes) {
    ModeSpace space(3, s.statistics, 6);
    FockVector v = vacuum(space);
    for (auto it = s.symbols.rbegin(); it != s.symbols.rend(); ++it) {
        const std::size_t m = modes.at(it->label);
        v = it->kind == wick::Kind::Create ? create(v, m) : annihilate(v, m);
    }
    return inner(vacuum(space), v);
}

CheckResult check_eq8() {
    std::mt19937_64 rng(8);
    std::normal_distribution<Real> g;
    double density = 0;
    for (std::size_t M : {8u, 64u}) {
        LatticeSpec lat{M, 1.0};
        ModeSpace space(M, Statistics::Bose, 2);
        for (int t = 0; t < 10; ++t) {
            CVector f(static_cast<Eigen::Index>(M));
            for (auto& z : f) z = Complex(g(rng), g(rng));
            f.normalize();
            FockVector v = prepare_one_particle({lat, f}, space);
            for (std::size_t x = 0; x < M; ++x)
                density = std::max(density, std::abs(number_density(v, x) - std::norm(f[static_cast<Eigen::Index>(x)])));
        }
    }

    const auto contraction = wick::vacuum_expectation(wick::parse("bose: a(x') a+(x) a(x) a+(x'')"));
    const bool symbolic = wick::to_string(contraction) == "d(x,x') d(x,x'')";

    static const char* labels[] = {"x", "y", "z"};
    std::uniform_int_distribution<int> coin(0, 1), pick(0, 2), mode(0, 2);
    double strings = 0;
    for (int t = 0; t < 200; ++t) {
        wick::OperatorString s{t % 2 ? Statistics::Fermi : Statistics::Bose, {}};
        const int length = 1 + t % 6;
        for (int k = 0; k < length; ++k)
            s.symbols.push_back({coin(rng) ? wick::Kind::Create : wick::Kind::Annihilate, labels[pick(rng)]});
        std::map<std::string, std::size_t> assign;
        for (const char* l : labels) assign[l] = static_cast<std::size_t>(mode(rng));
        strings = std::max(strings, std::abs(wick::evaluate(wick::vacuum_expectation(s), assign) -
                                             direct_vacuum_expectation(s, assign)));
    }
    const bool ok = density <= 1e-12 && symbolic && strings <= 1e-10;
    return {"eq8", ok, std::max(density, strings),
            "density " + sci(density) + ", contraction " + (symbolic ? "ok" : "wrong") + ", strings " + sci(strings)};
}

// Shared packet for the two Ehrenfest checks: M = 64, sigma0 = 4, shrinking.
std::vector<TrajectoryRecord> ehrenfest_records() {
    LatticeSpec lat{64, 1.0, 1.0};
    std::vector<Real> times;
    for (int i = 0; i <= 20; ++i) times.push_back(1e-3 * i);
    return trajectory(gaussian_packet(lat, 0.0, 0.0, 4.0, 1.0), times);
}

CheckResult check_eq12() {
    const auto recs = ehrenfest_records();
    const EhrenfestReport rep = ehrenfest_residuals(recs, 1.0);
    bool uncertainty = true;
    for (const auto& r : recs) uncertainty = uncertainty && r.dx * r.dp >= 0.5 * (1 - 1e-9);
    return {"eq12", rep.width_residual <= 1e-5 && uncertainty, rep.width_residual,
            "width " + sci(rep.width_residual) + (uncertainty ? "" : ", uncertainty violated")};
}

CheckResult check_eq13() {
    const auto recs = ehrenfest_records();
    const EhrenfestReport rep = ehrenfest_residuals(recs, 1.0);

    LatticeSpec lat{64, 1.0, 1.0};
    const WaveAmplitude f = gaussian_packet(lat, 0.0, 0.0, 4.0, 1.0);
    const std::vector<Real> times{0.0, 2.0, 4.0, 8.0};
    const auto coarse = trajectory(f, times);
    double linear = 0;
    bool monotone = true;
    for (std::size_t i = 1; i < coarse.size(); ++i) {
        const Real rhs = 2 * coarse[0].mean_h * coarse[i].t;
        linear = std::max(linear, std::abs(coarse[i].mean_c - coarse[0].mean_c - rhs) / std::abs(rhs));
        monotone = monotone && coarse[i].mean_c >= coarse[i - 1].mean_c;
    }
    const bool ok = rep.correlation_residual <= 1e-5 && linear <= 1e-6 && monotone;
    return {"eq13", ok, std::max(rep.correlation_residual, linear),
            "derivative " + sci(rep.correlation_residual) + ", slope " + sci(linear) + (monotone ? "" : ", <C> decreased")};
}

CheckResult check_eq14() {
    const std::vector<Complex> f{0.5, Complex(0, std::sqrt(0.75))};
    MeasurementModel model{{-1.0, 1.0}, f, 1.0};
    const BipartiteState s = premeasure(model);
    const DensityMatrix rho = decohere(s);
    const std::vector<Real> born = born_distribution(f);
    const Eigen::Index n = static_cast<Eigen::Index>(f.size());

    double diag = 0, purity_target = 0;
    for (Eigen::Index l = 0; l < n; ++l) {
        diag = std::max(diag, std::abs(rho.diagonal()[l * n + l] - born[static_cast<std::size_t>(l)]));
        purity_target += born[static_cast<std::size_t>(l)] * born[static_cast<std::size_t>(l)];
    }
    const double purity = std::abs(rho.purity() - purity_target);

    const DensityMatrix outcomes = partial_trace(rho, n, n, Subsystem::A);
    const std::uint64_t draws = 100000;
    const auto counts = sample_outcomes(outcomes, draws, 14, 1);
    bool frequencies = true;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        const double p = born[l], freq = static_cast<double>(counts[l]) / draws;
        frequencies = frequencies && std::abs(freq - p) <= 5 * std::sqrt(p * (1 - p) / draws);
    }
    const bool ok = diag <= 1e-12 && purity <= 1e-12 && frequencies;
    return {"eq14", ok, std::max(diag, purity),
            "diagonal " + sci(diag) + ", purity " + sci(purity) + (frequencies ? "" : ", sample frequencies off")};
}

CheckResult check_comment6() {
    LatticeSpec lat{64, 0.25, 1.0, Dispersion::LatticeRelativistic};
    double equal_time = 0;
    for (int j = 1; j < 32; ++j) equal_time = std::max(equal_time, std::abs(pauli_jordan(lat, 0.0, j * 0.25, true)));
    const double with = std::abs(pauli_jordan(lat, 0.5, 3.0, true));
    const double without = std::abs(pauli_jordan(lat, 0.5, 3.0, false));
    const bool ok = equal_time <= 1e-12 && with <= 1e-3 * without;
    return {"comment6", ok, equal_time,
            "equal-time " + sci(equal_time) + ", suppression " + sci(without / std::max(with, 1e-300))};
}

}  // namespace

double LadderResiduals::max() const { return std::max({mixed, lower, upper}); }

LadderResiduals ladder_residuals(const ModeSpace& space, int samples, std::uint64_t seed, bool jordan_wigner) {
    const Ladder a = [&](const FockVector& v, std::size_t m) { return detail::annihilate_impl(v, m, 0, jordan_wigner); };
    const Ladder ad = [&](const FockVector& v, std::size_t m) { return detail::create_impl(v, m, 0, jordan_wigner); };
    const bool fermi = space.statistics() == Statistics::Fermi;
    if (!fermi && space.nmax() < 2) throw std::invalid_argument("ladder_residuals: nmax must be at least 2");
    const Real sign = fermi ? 1.0 : -1.0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> mode(0, space.num_modes() - 1);

    LadderResiduals r{0, 0, 0};
    for (int s = 0; s < samples; ++s) {
        const FockVector v = random_basis(rng, space, fermi ? 1 : space.nmax() - 2);
        const std::size_t i = mode(rng), j = mode(rng);
        r.mixed = std::max(r.mixed, (a(ad(v, j), i) + sign * ad(a(v, i), j) - (i == j ? 1.0 : 0.0) * v).norm());
        r.lower = std::max(r.lower, (a(a(v, j), i) + sign * a(a(v, i), j)).norm());
        r.upper = std::max(r.upper, (ad(ad(v, j), i) + sign * ad(ad(v, i), j)).norm());
    }
    return r;
}

const std::vector<std::string>& verify_tags() {
    static const std::vector<std::string> tags{"eq3", "eq8", "eq12", "eq13", "eq14", "comment6"};
    return tags;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
    for (const auto& tag : options.only)
        if (std::find(verify_tags().begin(), verify_tags().end(), tag) == verify_tags().end())
            throw std::invalid_argument("unknown check '" + tag + "'");
    auto wanted = [&](const std::string& tag) {
        return options.only.empty() || std::find(options.only.begin(), options.only.end(), tag) != options.only.end();
    };

    std::vector<CheckResult> results;
    if (wanted("eq3")) results.push_back(check_eq3(options.drop_fermion_sign));
    if (wanted("eq8")) results.push_back(check_eq8());
    if (wanted("eq12")) results.push_back(check_eq12());
    if (wanted("eq13")) results.push_back(check_eq13());
    if (wanted("eq14")) results.push_back(check_eq14());
    if (wanted("comment6")) results.push_back(check_comment6());
    return results;
}

}  // namespace qfock::cli
