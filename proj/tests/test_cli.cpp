// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = qfock::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("qfock_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string without_timestamp(const std::string& meta) {
    std::string out;
    std::istringstream in(meta);
    for (std::string line; std::getline(in, line);)
        if (line.rfind("timestamp", 0) != 0) out += line + '\n';
    return out;
}

}  // namespace

TEST_CASE("wick prints the normal form") {
    Result r = invoke({"wick", "--expr", "bose: a(x1) a+(x2)"});
    CHECK(r.code == 0);
    CHECK(r.out == "d(x1,x2) + a+(x2) a(x1)\n");

    r = invoke({"wick", "--vev", "--expr", "fermi: a(x1) a(x2) a+(x1) a+(x2)"});
    CHECK(r.code == 0);
    CHECK(r.out == "-1 + d(x1,x2)\n");

    fs::path dir = scratch("wick");
    std::ofstream(dir / "exprs.txt") << "# two strings\nbose: a(x) a+(x)\n\nfermi: a+(y) a+(x)\n";
    r = invoke({"wick", "--file", (dir / "exprs.txt").string()});
    CHECK(r.code == 0);
    CHECK(r.out == "1 + a+(x) a(x)\n-a+(x) a+(y)\n");

    CHECK(invoke({"wick", "--expr", "bose: a(x"}).code == 2);
    CHECK(invoke({"wick"}).code == 2);
    CHECK(invoke({"wick", "--file", (dir / "missing.txt").string()}).code == 2);
}

TEST_CASE("unknown and missing scenarios") {
    Result r = invoke({"teleport"});
    CHECK(r.code == 2);
    for (const auto& name : qfock::cli::scenario_names()) CHECK(r.err.find(name) != std::string::npos);
    r = invoke({});
    CHECK(r.code == 2);
    CHECK(r.err.find("wavepacket") != std::string::npos);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"wavepacket", "--bogus", "1"}).code == 2);
}

TEST_CASE("verify") {
    Result r = invoke({"verify"});
    CHECK(r.code == 0);
    for (const auto& tag : qfock::cli::verify_tags()) CHECK(r.out.find(tag) != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(invoke({"verify"}).out == r.out);

    Result only = invoke({"verify", "--only", "eq8"});
    CHECK(only.code == 0);
    CHECK(only.out.rfind("eq8", 0) == 0);
    CHECK(std::count(only.out.begin(), only.out.end(), '\n') == 1);

    Result fault = invoke({"verify", "--inject-fault-fermion-sign", "--only", "eq3,eq8"});
    CHECK(fault.code == 1);
    CHECK(fault.out.find("eq3       FAIL") != std::string::npos);
    CHECK(fault.out.find("eq8       PASS") != std::string::npos);
    CHECK(fault.err.find("eq3") != std::string::npos);

    CHECK(invoke({"verify", "--only", "eq99"}).code == 2);
}

TEST_CASE("wavepacket trajectory") {
    fs::path dir = scratch("wavepacket");
    Result r = invoke({"wavepacket", "--M", "256", "--sigma0", "8", "--chirp", "1", "--times", "0:5:0.01", "--out", dir.string()});
    REQUIRE(r.code == 0);
    auto rows = read_csv(dir / "trajectory.csv");
    REQUIRE(rows.size() == 502);
    CHECK(rows[0] == std::vector<std::string>{"t", "mean_x", "mean_p", "mean_x2", "mean_c", "mean_h", "dx", "dp"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][4]) >= std::stod(rows[i - 1][4]));
    CHECK(std::stod(rows[1][4]) == doctest::Approx(-0.5));
    CHECK(rows.back()[0] == "5");
    CHECK(read_csv(dir / "ehrenfest.csv")[0] == std::vector<std::string>{"label", "value"});
    CHECK(fs::exists(dir / "wavepacket.meta"));
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");

    CHECK(invoke({"wavepacket", "--M", "64", "--sigma0", "8", "--out", dir.string()}).code == 2);
    CHECK(invoke({"wavepacket", "--times", "0:1", "--out", dir.string()}).code == 2);
    CHECK(invoke({"wavepacket", "--times", "1:0:0.1", "--out", dir.string()}).code == 2);
    CHECK(invoke({"wavepacket", "--mass", "0", "--out", dir.string()}).code == 2);
    // Drifting into the seam is reported as a validation error.
    Result seam = invoke({"wavepacket", "--p0", "1", "--times", "0:200:50", "--out", dir.string()});
    CHECK(seam.code == 2);
    CHECK(seam.err.find("t = 100") != std::string::npos);
}

TEST_CASE("scenarios are byte-reproducible") {
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    const std::vector<std::vector<std::string>> runs{
        {"causality", "--M", "64", "--dx", "0.25", "--mass", "1"},
        {"measure", "--f", "0.6,0:0.8", "--n-samples", "70000", "--seed", "5"},
        {"entangle", "--theta", "0.7"},
        {"fock-check", "--stats", "fermi", "--M", "8"},
        {"wavepacket", "--M", "128", "--sigma0", "4", "--times", "0:2:0.5"},
    };
    for (const auto& args : runs) {
        CAPTURE(args[0]);
        fs::path a = scratch("det_a"), b = scratch("det_b");
        auto with_out = [&](const fs::path& dir) {
            auto v = args;
            v.push_back("--out");
            v.push_back(dir.string());
            return v;
        };
        REQUIRE(invoke(with_out(a)).code == 0);
        REQUIRE(invoke(with_out(b)).code == 0);
        std::size_t files = 0;
        for (const auto& e : fs::directory_iterator(a)) {
            ++files;
            CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        }
        CHECK(files >= 2);
    }
    unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("metadata sidecar") {
    fs::path dir = scratch("meta");
    REQUIRE(invoke({"measure", "--seed", "9", "--out", dir.string()}).code == 0);
    const std::string meta = slurp(dir / "measure.meta");
    CHECK(meta.find("seed = 9\n") != std::string::npos);
    CHECK(meta.find("generator = mt19937_64/splitmix64-substreams/chunk=65536\n") != std::string::npos);
    CHECK(meta.find("version = ") != std::string::npos);
    CHECK(meta.find("timestamp = ") != std::string::npos);

    fs::path again = scratch("meta2");
    REQUIRE(invoke({"measure", "--seed", "9", "--out", again.string()}).code == 0);
    CHECK(without_timestamp(meta) == without_timestamp(slurp(again / "measure.meta")));

    REQUIRE(invoke({"causality", "--M", "16", "--mass", "0", "--out", dir.string()}).code == 0);
    CHECK(slurp(dir / "causality.meta").find("zero_mode_excluded = true") != std::string::npos);
}

TEST_CASE("outcome and report schemas") {
    fs::path dir = scratch("schemas");
    REQUIRE(invoke({"measure", "--f", "1,1,1,1", "--normalize", "--eigenvalues", "-1.5,0,1.5,3", "--out", dir.string()}).code == 0);
    auto rows = read_csv(dir / "outcomes.csv");
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"lambda", "count", "frequency"});
    CHECK(rows[1][0] == "-1.5");
    long total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stol(rows[i][1]);
    CHECK(total == 100000);
    CHECK(read_csv(dir / "measure_report.csv")[0] == std::vector<std::string>{"label", "value"});

    REQUIRE(invoke({"entangle", "--out", dir.string()}).code == 0);
    auto ent = read_csv(dir / "entangle.csv");
    CHECK(ent[0] == std::vector<std::string>{"label", "value"});
    CHECK(ent[1][0] == "schmidt_entropy");
    CHECK(std::stod(ent[1][1]) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    REQUIRE(invoke({"causality", "--M", "32", "--dts", "0,1", "--seps", "0.25,2", "--out", dir.string()}).code == 0);
    auto caus = read_csv(dir / "causality.csv");
    CHECK(caus[0] == std::vector<std::string>{"dt", "dx", "spacelike", "with_re", "with_im", "without_re", "without_im"});
    CHECK(caus.size() == 5);

    CHECK(invoke({"measure", "--f", "1,1", "--out", dir.string()}).code == 2);
    CHECK(invoke({"measure", "--f", "1,x", "--out", dir.string()}).code == 2);
    CHECK(invoke({"measure", "--n-samples", "0", "--out", dir.string()}).code == 2);
    CHECK(invoke({"measure", "--energy", "0", "--out", dir.string()}).code == 2);
    CHECK(invoke({"causality", "--M", "32", "--seps", "0.3", "--out", dir.string()}).code == 2);
    CHECK(invoke({"causality", "--dispersion", "galilean", "--out", dir.string()}).code == 2);
    CHECK(invoke({"fock-check", "--stats", "anyon", "--out", dir.string()}).code == 2);
}

TEST_CASE("config file and precedence") {
    fs::path dir = scratch("config");
    std::ofstream(dir / "run.ini") << "# experiment\n[wavepacket]\nM = 128\nsigma0 = 4\nchirp = -1\ntimes = 0:1:0.5\n\n"
                                      "[measure]\nf = 0.6,0:0.8\nseed = 3\n";
    const std::string cfg = (dir / "run.ini").string();

    REQUIRE(invoke({"wavepacket", "--config", cfg, "--chirp", "1", "--out", dir.string()}).code == 0);
    const std::string meta = slurp(dir / "wavepacket.meta");
    CHECK(meta.find("M = 128\n") != std::string::npos);
    CHECK(meta.find("chirp = 1\n") != std::string::npos);
    CHECK(meta.find("times = 0:1:0.5\n") != std::string::npos);

    REQUIRE(invoke({"--config", cfg, "measure", "--out", dir.string()}).code == 0);
    CHECK(slurp(dir / "measure.meta").find("f = 0.6,0:0.8\n") != std::string::npos);
    CHECK(slurp(dir / "measure.meta").find("seed = 3\n") != std::string::npos);

    CHECK(invoke({"wavepacket", "--config", (dir / "nope.ini").string()}).code == 2);
}

TEST_CASE("output directory from the environment") {
    fs::path dir = scratch("env");
    setenv("QFOCK_OUTPUT_DIR", (dir / "nested").string().c_str(), 1);
    Result r = invoke({"entangle"});
    unsetenv("QFOCK_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "nested" / "entangle.csv"));
    CHECK(fs::exists(dir / "nested" / "entangle.meta"));
}
