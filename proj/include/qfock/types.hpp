// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Core>

namespace qfock {

using Real = double;
using Complex = std::complex<double>;

using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Tolerance used when checking that a caller-supplied state is normalized.
inline constexpr Real kNormTolerance = 1e-10;

inline constexpr Real kPi = 3.14159265358979323846;

}  // namespace qfock
