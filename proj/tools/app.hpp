// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

// Scenario runner behind the `qfock` executable. Split from main() so tests
// can drive it in-process.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qfock/fock.hpp"

namespace qfock::cli {

enum ExitCode : int { kOk = 0, kInvariant = 1, kValidation = 2 };

/// Scenario names accepted as the first positional argument.
const std::vector<std::string>& scenario_names();

/// `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Largest residual of each (anti)commutation relation over random
/// (basis state, i, j) samples. Bose occupations stay at most nmax - 2 so
/// two creations never leave the space.
struct LadderResiduals {
    double mixed;  ///< [a_i, a_j^dag]_-+ - delta_ij
    double lower;  ///< [a_i, a_j]_-+
    double upper;  ///< [a_i^dag, a_j^dag]_-+
    double max() const;
};
LadderResiduals ladder_residuals(const ModeSpace& space, int samples, std::uint64_t seed, bool jordan_wigner = true);

struct CheckResult {
    std::string tag;
    bool passed;
    double residual;
    std::string detail;
};

struct VerifyOptions {
    std::vector<std::string> only;  ///< empty: all checks
    bool drop_fermion_sign = false;  ///< fault injection for testing the verifier
};

/// Valid check tags, in table order.
const std::vector<std::string>& verify_tags();

/// Throws std::invalid_argument for an unknown tag in `only`.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

}  // namespace qfock::cli
