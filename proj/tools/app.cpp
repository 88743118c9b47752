// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qfock/csv.hpp"
#include "qfock/dynamics.hpp"
#include "qfock/field.hpp"
#include "qfock/qinfo.hpp"
#include "qfock/wick.hpp"

#ifndef QFOCK_VERSION
#define QFOCK_VERSION "unknown"
#endif

namespace qfock::cli {

namespace {

namespace fs = std::filesystem;

/// Raised when a scenario runs but one of its invariants does not hold.
struct InvariantFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for malformed flag values that CLI11 cannot catch itself.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

// Common artifact plumbing: output directory and metadata sidecar.
struct Output {
    std::string dir;
    Metadata meta;

    fs::path path(const std::string& name) const { return fs::path(dir) / name; }

    void write(const std::string& name, const std::string& contents, std::ostream& out) const {
        write_atomic(path(name), contents);
        out << "wrote " << path(name).string() << '\n';
    }

    // The timestamp is the last line so determinism checks can drop it.
    void write_metadata(const std::string& scenario, std::ostream& out) const {
        Metadata full{{"tool", "qfock"}, {"version", QFOCK_VERSION}, {"scenario", scenario}};
        full.insert(full.end(), meta.begin(), meta.end());
        full.emplace_back("timestamp", timestamp());
        write(scenario + ".meta", format_metadata(full), out);
    }
};

std::string default_output_dir() {
    const char* env = std::getenv("QFOCK_OUTPUT_DIR");
    return env && *env ? env : ".";
}

std::vector<Real> parse_real_list(const std::string& text, const char* what) {
    std::vector<Real> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string(what) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

// "start:stop:step", stop included when it lies on the grid.
std::vector<Real> parse_times(const std::string& text) {
    std::vector<Real> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_real_list(item, "--times").front());
    if (parts.size() != 3) throw ValidationError("--times: expected start:stop:step");
    const Real start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0) || stop < start) throw ValidationError("--times: need step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    if (n > 10'000'000) throw ValidationError("--times: too many samples");
    std::vector<Real> times;
    for (std::size_t i = 0; i <= n; ++i) times.push_back(start + static_cast<Real>(i) * step);
    return times;
}

// Amplitudes as "re" or "re:im", comma separated.
std::vector<Complex> parse_amplitudes(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        const Real re = parse_real_list(item.substr(0, colon), "--f").front();
        const Real im = colon == std::string::npos ? 0.0 : parse_real_list(item.substr(colon + 1), "--f").front();
        out.emplace_back(re, im);
    }
    if (out.empty()) throw ValidationError("--f: no amplitudes");
    return out;
}

Dispersion parse_dispersion(const std::string& name) {
    if (name == "lattice") return Dispersion::LatticeRelativistic;
    if (name == "continuum") return Dispersion::Relativistic;
    throw ValidationError("--dispersion must be 'lattice' or 'continuum'");
}

// Default grid: dt in [0, L/4] in steps of 2 dx, separations on every
// lattice multiple up to L/4. Rows are flagged spacelike by the margin rule.
void default_causality_grid(const LatticeSpec& lat, std::vector<Real>& dts, std::vector<Real>& seps) {
    const Real quarter = lat.length() / 4;
    for (std::size_t i = 0; 2.0 * static_cast<Real>(i) * lat.spacing <= quarter + 1e-12; ++i)
        dts.push_back(2.0 * static_cast<Real>(i) * lat.spacing);
    for (std::size_t j = 1; static_cast<Real>(j) * lat.spacing <= quarter + 1e-12; ++j)
        seps.push_back(static_cast<Real>(j) * lat.spacing);
}

// ----------------------------------------------------------------- scenarios

struct FockCheckOptions {
    std::string stats = "bose";
    std::size_t M = 4;
    int nmax = 6;
    int pairs = 200;
    std::uint64_t seed = 1;
};

int run_fock_check(const FockCheckOptions& o, Output& output, std::ostream& out) {
    Statistics stats;
    if (o.stats == "bose")
        stats = Statistics::Bose;
    else if (o.stats == "fermi")
        stats = Statistics::Fermi;
    else
        throw ValidationError("--stats must be 'bose' or 'fermi'");
    const ModeSpace space(o.M, stats, o.nmax);
    if (o.pairs <= 0) throw ValidationError("--pairs must be positive");

    const LadderResiduals r = ladder_residuals(space, o.pairs, o.seed);
    CsvTable table({"label", "value"});
    table.add_row({"mixed_relation_residual", format_real(r.mixed)});
    table.add_row({"annihilator_relation_residual", format_real(r.lower)});
    table.add_row({"creator_relation_residual", format_real(r.upper)});

    bool ok = r.max() <= 1e-12;
    if (stats == Statistics::Bose) {
        // <A^dag A - A A^dag> = -1 on random normalized states inside the safe subspace.
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> occ(0, o.nmax - 1);
        std::uniform_int_distribution<std::size_t> mode(0, o.M - 1);
        std::normal_distribution<Real> g;
        Real worst = 0;
        for (int s = 0; s < 50; ++s) {
            FockVector v(space);
            for (int t = 0; t < 6; ++t) {
                Occupation oc(space.slot_count());
                for (auto& n : oc) n = static_cast<std::uint8_t>(occ(rng));
                v.accumulate(oc, Complex(g(rng), g(rng)));
            }
            v = v.normalized();
            const std::size_t m = mode(rng);
            const Complex value = inner(v, create(annihilate(v, m), m)) - inner(v, annihilate(create(v, m), m));
            worst = std::max(worst, std::abs(value + 1.0));
        }
        table.add_row({"number_difference_residual", format_real(worst)});
        ok = ok && worst <= 1e-12;
    }

    output.meta = {{"statistics", o.stats}, {"M", std::to_string(o.M)}, {"nmax", std::to_string(space.nmax())},
                   {"pairs", std::to_string(o.pairs)}, {"seed", std::to_string(o.seed)}, {"generator", "mt19937_64"}};
    output.write("fock_check.csv", table.str(), out);
    output.write_metadata("fock-check", out);
    if (!ok) throw InvariantFailure("fock-check: ladder relations violated (max residual " + format_real(r.max()) + ")");
    return kOk;
}

struct WickOptions {
    std::string expr;
    std::string file;
    bool vev = false;
};

int run_wick(const WickOptions& o, std::ostream& out) {
    if (o.expr.empty() == o.file.empty()) throw ValidationError("wick: give exactly one of --expr or --file");
    std::vector<std::string> lines;
    if (!o.expr.empty()) {
        lines.push_back(o.expr);
    } else {
        std::ifstream in(o.file);
        if (!in) throw ValidationError("wick: cannot read " + o.file);
        for (std::string line; std::getline(in, line);)
            if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#')
                lines.push_back(line);
    }
    for (const auto& line : lines) {
        wick::OperatorString s;
        try {
            s = wick::parse(line);
        } catch (const wick::ParseError& e) {
            throw ValidationError("wick: " + std::string(e.what()));
        }
        if (o.vev)
            out << wick::to_string(wick::vacuum_expectation(s)) << '\n';
        else
            out << wick::to_string(wick::normal_order(s)) << '\n';
    }
    return kOk;
}

struct CausalityOptions {
    std::size_t M = 512;
    Real dx = 0.25;
    Real mass = 1.0;
    std::string dispersion = "lattice";
    std::vector<std::string> dts;
    std::vector<std::string> seps;
    Real margin = 3.0;
    unsigned threads = 0;
};

int run_causality(const CausalityOptions& o, Output& output, std::ostream& out) {
    LatticeSpec lat{o.M, o.dx, o.mass, parse_dispersion(o.dispersion)};
    lat.validate();
    if (o.margin < 0) throw ValidationError("--margin must be nonnegative");

    std::vector<Real> dts, seps;
    default_causality_grid(lat, dts, seps);
    if (!o.dts.empty()) dts = parse_real_list(join(o.dts, ","), "--dts");
    if (!o.seps.empty()) seps = parse_real_list(join(o.seps, ","), "--seps");
    for (Real s : seps) {
        const Real j = s / lat.spacing;
        if (std::abs(j - std::round(j)) > 1e-9) throw ValidationError("--seps: separations must be lattice multiples");
    }

    const auto samples = commutator_sweep(lat, dts, seps, o.threads);
    CsvTable table({"dt", "dx", "spacelike", "with_re", "with_im", "without_re", "without_im"});
    Real max_with = 0, max_without = 0;
    for (const auto& s : samples) {
        const bool spacelike = spacelike_sample(s.dt, s.dx, o.margin);
        if (spacelike) {
            max_with = std::max(max_with, std::abs(s.with_antiparticles));
            max_without = std::max(max_without, std::abs(s.without_antiparticles));
        }
        table.add_row({format_real(s.dt), format_real(s.dx), spacelike ? "1" : "0", format_real(s.with_antiparticles.real()),
                       format_real(s.with_antiparticles.imag()), format_real(s.without_antiparticles.real()),
                       format_real(s.without_antiparticles.imag())});
    }

    output.meta = {{"M", std::to_string(o.M)},
                   {"dx", format_real(o.dx)},
                   {"mass", format_real(o.mass)},
                   {"dispersion", o.dispersion},
                   {"spacelike_margin", format_real(o.margin)},
                   {"zero_mode_excluded", excludes_zero_mode(lat) ? "true" : "false"},
                   {"samples", std::to_string(samples.size())},
                   {"max_spacelike_with_antiparticles", format_real(max_with)},
                   {"max_spacelike_without_antiparticles", format_real(max_without)}};
    output.write("causality.csv", table.str(), out);
    output.write_metadata("causality", out);
    return kOk;
}

struct WavepacketOptions {
    std::size_t M = 256;
    Real dx = 1.0;
    Real mass = 1.0;
    Real sigma0 = 8.0;
    Real chirp = 0.0;
    Real p0 = 0.0;
    Real x0 = 0.0;
    std::string times = "0:5:0.01";
};

int run_wavepacket(const WavepacketOptions& o, Output& output, std::ostream& out) {
    LatticeSpec lat{o.M, o.dx, o.mass, Dispersion::Nonrelativistic};
    lat.validate();
    if (!(o.mass > 0)) throw ValidationError("--mass must be positive");
    const std::vector<Real> times = parse_times(o.times);
    const WaveAmplitude f = gaussian_packet(lat, o.x0, o.p0, o.sigma0, o.chirp);

    std::vector<TrajectoryRecord> recs;
    try {
        recs = trajectory(f, times);
    } catch (const std::domain_error& e) {
        throw ValidationError(e.what());
    }

    CsvTable table({"t", "mean_x", "mean_p", "mean_x2", "mean_c", "mean_h", "dx", "dp"});
    bool uncertainty = true, monotone = true;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        table.add_row(std::vector<Real>{r.t, r.mean_x, r.mean_p, r.mean_x2, r.mean_c, r.mean_h, r.dx, r.dp});
        uncertainty = uncertainty && r.dx * r.dp >= 0.5 * (1 - 1e-9);
        if (i) monotone = monotone && r.mean_c >= recs[i - 1].mean_c - 1e-12 * std::max(1.0, std::abs(r.mean_c));
    }

    CsvTable report({"label", "value"});
    if (recs.size() >= 3) {
        const EhrenfestReport rep = ehrenfest_residuals(recs, o.mass);
        report.add_row({"width_residual", format_real(rep.width_residual)});
        report.add_row({"correlation_residual", format_real(rep.correlation_residual)});
    }
    Real min_product = recs.front().dx * recs.front().dp;
    for (const auto& r : recs) min_product = std::min(min_product, r.dx * r.dp);
    report.add_row({"min_dx_dp", format_real(min_product)});

    output.meta = {{"M", std::to_string(o.M)},      {"dx", format_real(o.dx)},       {"mass", format_real(o.mass)},
                   {"sigma0", format_real(o.sigma0)}, {"chirp", format_real(o.chirp)}, {"p0", format_real(o.p0)},
                   {"x0", format_real(o.x0)},        {"times", o.times},              {"samples", std::to_string(recs.size())}};
    output.write("trajectory.csv", table.str(), out);
    output.write("ehrenfest.csv", report.str(), out);
    output.write_metadata("wavepacket", out);
    if (!uncertainty) throw InvariantFailure("wavepacket: dx * dp dropped below 1/2");
    if (!monotone) throw InvariantFailure("wavepacket: <C> decreased");
    return kOk;
}

struct EntangleOptions {
    Real theta = std::numbers::pi / 2;
};

int run_entangle(const EntangleOptions& o, Output& output, std::ostream& out) {
    // phi1 = |0>, phi2 = cos(theta)|0> + sin(theta)|1>, psi1 = |0>, psi2 = |1>.
    CVector e0 = CVector::Zero(2), e1 = CVector::Zero(2), phi2(2);
    e0[0] = 1;
    e1[1] = 1;
    phi2 << std::cos(o.theta), std::sin(o.theta);
    const BipartiteState s = entangled_pair(e0, phi2, e0, e1);

    const SchmidtDecomposition sd = schmidt(s);
    const Real sa = reduced_density(s, Subsystem::A).von_neumann_entropy();
    const Real sb = reduced_density(s, Subsystem::B).von_neumann_entropy();

    CsvTable table({"label", "value"});
    table.add_row({"schmidt_entropy", format_real(sd.entropy)});
    table.add_row({"entropy_a", format_real(sa)});
    table.add_row({"entropy_b", format_real(sb)});
    table.add_row({"purity_a", format_real(reduced_density(s, Subsystem::A).purity())});
    table.add_row({"schmidt_rank", std::to_string(schmidt_rank(s, 1e-12))});
    for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
        table.add_row({"schmidt_coefficient_" + std::to_string(k), format_real(sd.coefficients[k])});
    if (std::abs(std::sin(o.theta)) > 1e-7) {
        // Finding subsystem A in |1> singles out the second branch, so B is psi2.
        const ConditionalState c = conditional_state(s, e1);
        table.add_row({"conditional_probability_a1", format_real(c.probability)});
        table.add_row({"conditional_fidelity_b", format_real(std::norm(e1.dot(c.state)))});
    }

    output.meta = {{"theta", format_real(o.theta)}};
    output.write("entangle.csv", table.str(), out);
    output.write_metadata("entangle", out);
    if (std::abs(sa - sb) > 1e-9 || std::abs(sa - sd.entropy) > 1e-9)
        throw InvariantFailure("entangle: subsystem entropies disagree");
    return kOk;
}

struct MeasureOptions {
    std::vector<std::string> f{"0.5", "0:0.8660254037844386"};
    std::vector<std::string> eigenvalues;
    bool normalize = false;
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 1;
    Real energy = 1.0;
    unsigned threads = 0;
};

int run_measure(const MeasureOptions& o, Output& output, std::ostream& out) {
    MeasurementModel model;
    model.amplitudes = parse_amplitudes(join(o.f, ","));
    if (o.normalize) {
        Real n = 0;
        for (auto z : model.amplitudes) n += std::norm(z);
        if (!(n > 0)) throw ValidationError("--f: all amplitudes are zero");
        for (auto& z : model.amplitudes) z /= std::sqrt(n);
    }
    if (!o.eigenvalues.empty()) {
        model.eigenvalues = parse_real_list(join(o.eigenvalues, ","), "--eigenvalues");
    } else {
        for (std::size_t l = 0; l < model.amplitudes.size(); ++l) model.eigenvalues.push_back(static_cast<Real>(l));
    }
    model.apparatus_energy = o.energy;
    if (o.n_samples == 0) throw ValidationError("--n-samples must be positive");

    const BipartiteState premeasured = premeasure(model);
    const DensityMatrix rho = decohere(premeasured);
    const auto n = static_cast<Eigen::Index>(model.amplitudes.size());
    const DensityMatrix outcomes = partial_trace(rho, n, n, Subsystem::A);
    const std::vector<Real> born = born_distribution(model.amplitudes);
    const auto counts = sample_outcomes(outcomes, o.n_samples, o.seed, o.threads);

    CsvTable table({"lambda", "count", "frequency"});
    for (std::size_t l = 0; l < counts.size(); ++l)
        table.add_row({format_real(model.eigenvalues[l]), std::to_string(counts[l]),
                       format_real(static_cast<Real>(counts[l]) / static_cast<Real>(o.n_samples))});

    CsvTable report({"label", "value"});
    Real diag_err = 0, purity_target = 0;
    for (Eigen::Index l = 0; l < n; ++l) {
        diag_err = std::max(diag_err, std::abs(rho.diagonal()[l * n + l] - born[static_cast<std::size_t>(l)]));
        purity_target += born[static_cast<std::size_t>(l)] * born[static_cast<std::size_t>(l)];
    }
    report.add_row({"purity_premeasured", format_real(DensityMatrix::pure(premeasured.flattened()).purity())});
    report.add_row({"purity_decohered", format_real(rho.purity())});
    report.add_row({"sum_born_squared", format_real(purity_target)});
    report.add_row({"pointer_entropy", format_real(schmidt(premeasured).entropy)});
    report.add_row({"decoherence_time", format_real(decoherence_time(o.energy))});
    for (std::size_t l = 0; l < born.size(); ++l) report.add_row({"born_" + std::to_string(l), format_real(born[l])});

    output.meta = {{"f", join(o.f, ",")},
                   {"eigenvalues", o.eigenvalues.empty() ? "index" : join(o.eigenvalues, ",")},
                   {"normalize", o.normalize ? "true" : "false"},
                   {"n_samples", std::to_string(o.n_samples)},
                   {"seed", std::to_string(o.seed)},
                   {"generator", kSamplerName},
                   {"apparatus_energy", format_real(o.energy)}};
    output.write("outcomes.csv", table.str(), out);
    output.write("measure_report.csv", report.str(), out);
    output.write_metadata("measure", out);
    if (diag_err > 1e-12 || std::abs(rho.purity() - purity_target) > 1e-12)
        throw InvariantFailure("measure: decohered state does not match the Born weights");
    return kOk;
}

int run_verify_command(const VerifyOptions& o, std::ostream& out) {
    const auto results = run_verify(o);
    std::vector<std::string> failed;
    for (const auto& r : results) {
        char line[64];
        std::snprintf(line, sizeof line, "%-9s %-4s ", r.tag.c_str(), r.passed ? "PASS" : "FAIL");
        out << line << r.detail << '\n';
        if (!r.passed) failed.push_back(r.tag);
    }
    if (!failed.empty()) throw InvariantFailure("verify: failed checks: " + join(failed, ", "));
    return kOk;
}

// CLI11 only reads --config ahead of the subcommand; hoist it there.
std::vector<std::string> hoist_config(std::vector<std::string> args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::vector<std::string> moved;
        if (args[i] == "--config" && i + 1 < args.size()) {
            moved = {args[i], args[i + 1]};
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
        } else if (args[i].rfind("--config=", 0) == 0) {
            moved = {args[i]};
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            continue;
        }
        args.insert(args.begin(), moved.begin(), moved.end());
        break;
    }
    return args;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"fock-check", "wick", "causality", "wavepacket", "entangle", "measure", "verify"};
    return names;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    args = hoist_config(std::move(args));

    // Name the valid scenarios when the first positional is not one of them.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            ++i;
            continue;
        }
        if (args[i].rfind("-", 0) == 0) continue;
        if (std::find(scenario_names().begin(), scenario_names().end(), args[i]) == scenario_names().end()) {
            err << "qfock: unknown scenario '" << args[i] << "'; valid scenarios: " << join(scenario_names(), ", ") << '\n';
            return kValidation;
        }
        break;
    }

    CLI::App app{"qfock: Fock-space field theory experiments"};
    app.set_version_flag("--version", QFOCK_VERSION);
    app.set_config("--config", "", "flat key = value file with one [scenario] section per subcommand");
    app.require_subcommand(1);

    Output output{default_output_dir(), {}};
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", output.dir, "output directory (default: $QFOCK_OUTPUT_DIR or .)");
    };

    FockCheckOptions fock_opts;
    auto* fock_cmd = app.add_subcommand("fock-check", "random-sample check of the ladder (anti)commutation relations");
    fock_cmd->add_option("--stats", fock_opts.stats, "bose or fermi")->capture_default_str();
    fock_cmd->add_option("--M", fock_opts.M, "number of modes")->capture_default_str()->check(CLI::Range(1, 16));
    fock_cmd->add_option("--nmax", fock_opts.nmax, "Bose occupation cap")->capture_default_str()->check(CLI::Range(2, 32));
    fock_cmd->add_option("--pairs", fock_opts.pairs, "random (state, i, j) samples")->capture_default_str();
    fock_cmd->add_option("--seed", fock_opts.seed)->capture_default_str();
    add_out(fock_cmd);

    WickOptions wick_opts;
    auto* wick_cmd = app.add_subcommand("wick", "normal-order an operator string");
    wick_cmd->add_option("--expr", wick_opts.expr, "e.g. \"bose: a(x1) a+(x2)\"");
    wick_cmd->add_option("--file", wick_opts.file, "one expression per line; # starts a comment line");
    wick_cmd->add_flag("--vev", wick_opts.vev, "print the vacuum expectation instead");

    CausalityOptions caus_opts;
    auto* caus_cmd = app.add_subcommand("causality", "field commutator over a (dt, dx) grid");
    caus_cmd->add_option("--M", caus_opts.M)->capture_default_str();
    caus_cmd->add_option("--dx", caus_opts.dx, "lattice spacing")->capture_default_str();
    caus_cmd->add_option("--mass", caus_opts.mass)->capture_default_str();
    caus_cmd->add_option("--dispersion", caus_opts.dispersion, "lattice or continuum")->capture_default_str();
    caus_cmd->add_option("--dts", caus_opts.dts, "comma-separated time offsets")->delimiter(',');
    caus_cmd->add_option("--seps", caus_opts.seps, "comma-separated separations (lattice multiples)")->delimiter(',');
    caus_cmd->add_option("--margin", caus_opts.margin, "off the equal-time slice, spacelike needs |dx| >= |dt| + margin")->capture_default_str();
    caus_cmd->add_option("--threads", caus_opts.threads, "0 = hardware concurrency");
    add_out(caus_cmd);

    WavepacketOptions wave_opts;
    auto* wave_cmd = app.add_subcommand("wavepacket", "free evolution of a chirped Gaussian");
    wave_cmd->add_option("--M", wave_opts.M)->capture_default_str();
    wave_cmd->add_option("--dx", wave_opts.dx)->capture_default_str();
    wave_cmd->add_option("--mass", wave_opts.mass)->capture_default_str();
    wave_cmd->add_option("--sigma0", wave_opts.sigma0)->capture_default_str();
    wave_cmd->add_option("--chirp", wave_opts.chirp)->capture_default_str();
    wave_cmd->add_option("--p0", wave_opts.p0)->capture_default_str();
    wave_cmd->add_option("--x0", wave_opts.x0)->capture_default_str();
    wave_cmd->add_option("--times", wave_opts.times, "start:stop:step")->capture_default_str();
    add_out(wave_cmd);

    EntangleOptions ent_opts;
    auto* ent_cmd = app.add_subcommand("entangle", "entropy of phi1 psi1 + phi2 psi2");
    ent_cmd->add_option("--theta", ent_opts.theta, "angle of phi2 away from phi1")->capture_default_str();
    add_out(ent_cmd);

    MeasureOptions meas_opts;
    auto* meas_cmd = app.add_subcommand("measure", "premeasure, decohere and sample outcomes");
    meas_cmd->add_option("--f", meas_opts.f, "amplitudes, comma separated, each re or re:im")->delimiter(',')->capture_default_str();
    meas_cmd->add_option("--eigenvalues", meas_opts.eigenvalues, "comma-separated outcome labels")->delimiter(',');
    meas_cmd->add_flag("--normalize", meas_opts.normalize, "rescale f to unit norm");
    meas_cmd->add_option("--n-samples", meas_opts.n_samples)->capture_default_str();
    meas_cmd->add_option("--seed", meas_opts.seed)->capture_default_str();
    meas_cmd->add_option("--energy", meas_opts.energy, "apparatus energy scale")->capture_default_str();
    meas_cmd->add_option("--threads", meas_opts.threads, "0 = hardware concurrency");
    add_out(meas_cmd);

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "reduced-scale invariant suite");
    verify_cmd->add_option("--only", verify_opts.only, "run only these checks: " + join(verify_tags(), ", "))->delimiter(',');
    verify_cmd->add_flag("--inject-fault-fermion-sign", verify_opts.drop_fermion_sign)->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << QFOCK_VERSION << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "qfock: " << e.what() << '\n';
        if (app.get_subcommands().empty()) err << "valid scenarios: " << join(scenario_names(), ", ") << '\n';
        return kValidation;
    }

    try {
        if (*fock_cmd) return run_fock_check(fock_opts, output, out);
        if (*wick_cmd) return run_wick(wick_opts, out);
        if (*caus_cmd) return run_causality(caus_opts, output, out);
        if (*wave_cmd) return run_wavepacket(wave_opts, output, out);
        if (*ent_cmd) return run_entangle(ent_opts, output, out);
        if (*meas_cmd) return run_measure(meas_opts, output, out);
        if (*verify_cmd) return run_verify_command(verify_opts, out);
    } catch (const InvariantFailure& e) {
        err << "qfock: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::invalid_argument& e) {
        err << "qfock: " << e.what() << '\n';
        return kValidation;
    } catch (const std::domain_error& e) {
        err << "qfock: " << e.what() << '\n';
        return kValidation;
    } catch (const std::out_of_range& e) {
        err << "qfock: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "qfock: internal error: " << e.what() << '\n';
        return kInvariant;
    }
    return kValidation;
}

}  // namespace qfock::cli
