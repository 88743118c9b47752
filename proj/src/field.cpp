// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/field.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

namespace qfock {

namespace {

void require_unit(Real norm, const char* what) {
    if (std::abs(norm - 1.0) > kNormTolerance)
        throw std::domain_error(std::string(what) + ": input is not normalized (norm " + std::to_string(norm) + ")");
}

}  // namespace

FockVector prepare_one_particle(const WaveAmplitude& f, const ModeSpace& space) {
    if (static_cast<std::size_t>(f.values.size()) != space.num_modes())
        throw std::invalid_argument("prepare_one_particle: mode space needs one mode per lattice site");
    require_unit(f.values.norm(), "prepare_one_particle");
    const std::span<const Complex> coeffs(f.values.data(), static_cast<std::size_t>(f.values.size()));
    return transformed_create(vacuum(space), coeffs);
}

FockVector prepare_general(const GeneralStateSpec& spec, const ModeSpace& space) {
    FockVector out(space);
    const FockVector vac = vacuum(space);
    for (const auto& [sites, amplitude] : spec.amplitudes) {
        if (static_cast<int>(sites.size()) > spec.max_sector)
            throw std::invalid_argument("prepare_general: sector " + std::to_string(sites.size()) +
                                        " exceeds the configured maximum " + std::to_string(spec.max_sector));
        if (!std::is_sorted(sites.begin(), sites.end()))
            throw std::invalid_argument("prepare_general: site tuples must be in nondecreasing order");
        FockVector term = vac;
        for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
            if (*it >= space.num_modes()) throw std::invalid_argument("prepare_general: site index out of range");
            term = create(term, *it);
        }
        out += amplitude * term;
    }
    if (out.norm() < 1e-14) throw std::domain_error("prepare_general: specification produces the null element");
    return out.normalized();
}

Real number_density(const FockVector& v, std::size_t x) { return number_expectation(v, x, 0); }

Complex field_expectation(const FockVector& v, std::size_t x) {
    require_unit(v.norm(), "field_expectation");
    return inner(v, annihilate(v, x));
}

namespace {

// Poisson weight e^{-a2} a2^n / n! summed over n > nmax.
Real poisson_tail(Real a2, int nmax) {
    if (a2 == 0) return 0;
    Real term = std::exp(-a2);
    for (int n = 1; n <= nmax; ++n) term *= a2 / n;
    Real tail = 0;
    for (int n = nmax + 1; n < nmax + 400; ++n) {
        term *= a2 / n;
        tail += term;
        if (term < 1e-30 * tail) break;
    }
    return tail;
}

}  // namespace

int coherent_truncation(Real alpha_abs) {
    const Real a2 = alpha_abs * alpha_abs;
    int nmax = 1;
    while (poisson_tail(a2, nmax) >= 1e-8) ++nmax;
    return nmax;
}

FockVector coherent_state(std::span<const Complex> mode_amplitudes, const ModeSpace& space) {
    if (space.statistics() != Statistics::Bose) throw std::invalid_argument("coherent_state: needs Bose statistics");
    if (mode_amplitudes.size() != space.num_modes())
        throw std::invalid_argument("coherent_state: expected one amplitude per mode");

    FockVector state = vacuum(space);
    const int nmax = space.nmax();
    for (std::size_t mode = 0; mode < mode_amplitudes.size(); ++mode) {
        const Complex alpha = mode_amplitudes[mode];
        if (alpha == Complex{}) continue;
        if (poisson_tail(std::norm(alpha), nmax) >= 1e-8)
            throw std::domain_error("coherent_state: nmax " + std::to_string(nmax) + " truncates more than 1e-8 of |alpha|^2 = " +
                                    std::to_string(std::norm(alpha)));

        std::vector<Complex> c(static_cast<std::size_t>(nmax) + 1);
        c[0] = 1.0;
        Real weight = 1.0;
        for (int n = 1; n <= nmax; ++n) {
            c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n) - 1] * alpha / std::sqrt(static_cast<Real>(n));
            weight += std::norm(c[static_cast<std::size_t>(n)]);
        }
        const Real scale = 1.0 / std::sqrt(weight);

        const std::size_t s = space.slot(mode);
        FockVector next(space);
        for (const auto& [occ, a] : state.terms()) {
            Occupation o = occ;
            for (int n = 0; n <= nmax; ++n) {
                o[s] = static_cast<std::uint8_t>(n);
                next.accumulate(o, a * scale * c[static_cast<std::size_t>(n)]);
            }
        }
        state = std::move(next);
    }
    return state;
}

Real eigen_residual(const FockVector& v, std::size_t mode, Complex alpha) {
    return (annihilate(v, mode) - alpha * v).norm();
}

Real identity_resolution_residual(const FockVector& v, std::size_t x) {
    const ModeSpace& space = v.space();
    const std::size_t s = space.slot(x);
    if (space.statistics() == Statistics::Bose)
        for (const auto& [occ, a] : v.terms())
            if (occ[s] >= space.nmax())
                throw std::domain_error("identity_resolution_residual: state leaves the safe subspace at site " + std::to_string(x));

    FockVector lhs = annihilate(create(v, x), x);
    const FockVector number = create(annihilate(v, x), x);
    if (space.statistics() == Statistics::Bose)
        lhs -= number;
    else
        lhs += number;
    lhs -= v;
    return lhs.norm();
}

bool excludes_zero_mode(const LatticeSpec& lattice) {
    return lattice.dispersion != Dispersion::Nonrelativistic && lattice.mass == 0;
}

Complex pauli_jordan(const LatticeSpec& lattice, Real dt, Real dx, bool include_antiparticles) {
    lattice.validate();
    if (lattice.dispersion == Dispersion::Nonrelativistic)
        throw std::invalid_argument("pauli_jordan: needs a relativistic dispersion");
    const Real steps = dx / lattice.spacing;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw std::invalid_argument("pauli_jordan: separation is not a multiple of the lattice spacing");

    const std::size_t M = lattice.num_sites;
    const bool drop_zero = excludes_zero_mode(lattice);
    Complex sum{};
    for (std::size_t i = 0; i < M; ++i) {
        if (drop_zero && lattice.momentum_number(i) == 0) continue;
        const Real p = lattice.momentum(i);
        const Real w = lattice.energy(p);
        const Real phase = p * dx - w * dt;
        Complex term = std::polar(1.0, phase);
        if (include_antiparticles) term -= std::polar(1.0, -phase);
        sum += term / (2 * w);
    }
    return sum / static_cast<Real>(M);
}

bool spacelike_sample(Real dt, Real dx, Real margin) {
    if (dt == 0) return dx != 0;
    return std::abs(dx) >= std::abs(dt) + margin;
}

std::vector<CommutatorSample> commutator_sweep(const LatticeSpec& lattice, std::span<const Real> dts,
                                               std::span<const Real> dxs, unsigned threads) {
    std::vector<CommutatorSample> out(dts.size() * dxs.size());
    if (out.empty()) return out;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(dts.size()));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a)
            for (std::size_t b = 0; b < dxs.size(); ++b)
                out[a * dxs.size() + b] = {dts[a], dxs[b], pauli_jordan(lattice, dts[a], dxs[b], true),
                                           pauli_jordan(lattice, dts[a], dxs[b], false)};
    };

    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (dts.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < dts.size(); begin += chunk)
        jobs.push_back(std::async(std::launch::async, work, begin, std::min(dts.size(), begin + chunk)));
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace qfock
