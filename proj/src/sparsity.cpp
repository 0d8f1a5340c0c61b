// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/sparsity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace onescan {

double sin_pi(double x) {
  const double nearest = std::nearbyint(x);
  const double r = x - nearest;  // exact: |x| modest, nearest representable
  const double s = std::sin(std::numbers::pi * r);
  return static_cast<long long>(nearest) % 2 == 0 ? s : -s;
}

double gamma_negative(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma_negative expects the magnitude x > 0");
  }
  const double s = sin_pi(x);
  if (s == 0.0 || std::abs(s) < 1e-15) {
    throw std::domain_error("gamma pole at -" + std::to_string(x));
  }
  // Gamma(-x) Gamma(1+x) = -pi / sin(pi x)
  return -std::numbers::pi / (s * std::tgamma(1.0 + x));
}

KEstimate estimate_k(const RawMeasurements& raw, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("estimator requires alpha in (0, 1)");
  }
  if (raw.m < 2) {
    throw std::invalid_argument("estimator requires at least 2 measurements");
  }
  double harmonic = 0.0;
  for (double y : raw.y) {
    if (y == 0.0 || !std::isfinite(y)) {
      throw std::domain_error("harmonic term undefined for y_j = 0");
    }
    harmonic += std::pow(std::abs(y), -alpha);
  }
  const double g1 = gamma_negative(alpha);          // Gamma(-alpha)
  const double g2 = gamma_negative(2.0 * alpha);    // Gamma(-2 alpha); alpha=1/2 pole
  const double sin_half = sin_pi(alpha / 2.0);
  const double pref = -(2.0 / std::numbers::pi) * g1 * sin_half;
  const double bias =
      -std::numbers::pi * g2 * sin_pi(alpha) / ((g1 * sin_half) * (g1 * sin_half));
  const double m = static_cast<double>(raw.m);
  KEstimate est;
  est.m_used = raw.m;
  est.k_hat = pref / harmonic * (m - (bias - 1.0));
  return est;
}

}  // namespace onescan
