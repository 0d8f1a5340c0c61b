// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used as test oracles. Everything
// here recomputes expected values by a different route than the library:
// dense materialized designs, direct quadrature of the integral forms of
// the exponents, and textbook statistics.

#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "onescan/encoder.hpp"
#include "onescan/stable.hpp"

namespace oracles {

// Materializes the full design matrix (row i, column j) through the public
// per-cell API.
inline std::vector<std::vector<double>> dense_design(
    const onescan::DesignSeed& seed, double alpha) {
  std::vector<std::vector<double>> s(seed.n, std::vector<double>(seed.m));
  for (std::size_t i = 0; i < seed.n; ++i) {
    for (std::size_t j = 0; j < seed.m; ++j) {
      const onescan::CellDraw d = onescan::cell(seed, i, j);
      s[i][j] = onescan::cms_transform(d.u, d.w, alpha);
    }
  }
  return s;
}

// Brute-force dense encode: y = S^T x over the materialized design.
inline std::vector<double> dense_encode(const onescan::SparseSignal& signal,
                                        const onescan::DesignSeed& seed,
                                        double alpha) {
  const auto s = dense_design(seed, alpha);
  const std::vector<double> x = signal.dense();
  std::vector<double> y(seed.m, 0.0);
  for (std::size_t j = 0; j < seed.m; ++j) {
    for (std::size_t i = 0; i < seed.n; ++i) y[j] += x[i] * s[i][j];
  }
  return y;
}

// Kolmogorov-Smirnov statistic of samples against a cdf.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

// Quadrature form of the false-positive exponent:
//   eps t - K log( (1/2) int_0^1 (1+u^b)^t + (1-u^b)^t du ),  b = K-1.
inline double fp_exponent_quadrature(double t, double eps, double k) {
  const double b = k - 1.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double bracket = integrator.integrate(
      [&](double u) {
        const double ub = std::pow(u, b);
        return 0.5 * (std::pow(1.0 + ub, t) + std::pow(1.0 - ub, t));
      },
      0.0, 1.0, 1e-10);
  return eps * t - k * std::log(bracket);
}

// Quadrature form of the false-negative bracket:
//   (1/2) int (1+u^b)^-t + (1/2) int (1-u^b)^-t
//   - (1/2) int_0^inf e^-w int_{e^{-w/b}}^1 [(1-u^b)^-t - (1+u^b)^-t] du dw.
// The nested integral is evaluated literally.
inline double fn_bracket_quadrature(double t, double k) {
  const double b = k - 1.0;
  // boost passes xc = (nearest endpoint) - x when the integrand takes two
  // arguments; near the right endpoint it is the exact complement 1 - u,
  // which keeps 1 - u^b accurate in the singular region.
  const auto one_minus_ub = [&](double u, double uc) {
    const double omu = uc > 0.0 ? uc : 1.0 - u;
    return -std::expm1(b * std::log1p(-omu));
  };
  boost::math::quadrature::tanh_sinh<double> inner;
  const double i_plus = inner.integrate(
      [&](double u) { return std::pow(1.0 + std::pow(u, b), -t); }, 0.0, 1.0,
      1e-9);
  const double i_minus = inner.integrate(
      [&](double u, double uc) { return std::pow(one_minus_ub(u, uc), -t); },
      0.0, 1.0, 1e-9);
  boost::math::quadrature::exp_sinh<double> outer;
  const double dbl = outer.integrate(
      [&](double w) {
        boost::math::quadrature::tanh_sinh<double> in2;
        const double lo = std::exp(-w / b);
        if (lo >= 1.0) return 0.0;
        return std::exp(-w) *
               in2.integrate(
                   [&](double u, double uc) {
                     return std::pow(one_minus_ub(u, uc), -t) -
                            std::pow(1.0 + std::pow(u, b), -t);
                   },
                   lo, 1.0, 1e-9);
      },
      1e-9);
  return 0.5 * i_plus + 0.5 * i_minus - 0.5 * dbl;
}

inline double fn_exponent_quadrature(double t, double eps, double k) {
  return -eps * t - k * std::log(fn_bracket_quadrature(t, k));
}

// Uniform random K-sparse signal with +-1 or N(0, sigma^2) values.
inline onescan::SparseSignal random_signal(std::mt19937_64& engine,
                                           std::size_t n, std::size_t k,
                                           bool pm_one, double sigma = 5.0) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), engine);
  std::vector<std::pair<std::size_t, double>> entries;
  std::normal_distribution<double> normal(0.0, sigma);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t e = 0; e < k; ++e) {
    double v;
    if (pm_one) {
      v = coin(engine) ? 1.0 : -1.0;
    } else {
      do {
        v = normal(engine);
      } while (v == 0.0);
    }
    entries.emplace_back(idx[e], v);
  }
  return onescan::SparseSignal(n, std::move(entries));
}

}  // namespace oracles
