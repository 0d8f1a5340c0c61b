// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Harmonic-mean sparsity estimator: recovers K (more precisely sum |x_i|^a)
// from a handful of full-precision measurements of a small-alpha stable
// sketch. For alpha -> 0 the estimate tends to (M - 1) / sum 1/|y_j|^a.

#pragma once

#include <cstddef>

#include "onescan/encoder.hpp"

namespace onescan {

struct KEstimate {
  double k_hat{0.0};
  std::size_t m_used{0};
};

// Gamma function at a negative non-integer argument, computed from the
// positive-axis routine through the reflection identity. Throws
// std::domain_error at the poles (x integer).
double gamma_negative(double x);

// sin(pi * x) with exact argument reduction, so the reflection identity
// stays accurate near integers.
double sin_pi(double x);

// Evaluates the harmonic-mean estimator
//   k_hat = pref / sum_j |y_j|^-alpha * (M - (bias - 1))
// with pref = -(2/pi) Gamma(-alpha) sin(pi alpha / 2) and
// bias = -pi Gamma(-2 alpha) sin(pi alpha) / [Gamma(-alpha) sin(pi alpha/2)]^2.
// Requires alpha in (0, 1) excluding 1/2 (Gamma(-2 alpha) pole), M >= 2, and
// every |y_j| > 0; throws std::domain_error / std::invalid_argument otherwise.
KEstimate estimate_k(const RawMeasurements& raw, double alpha);

}  // namespace onescan
