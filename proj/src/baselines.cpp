// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/baselines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace onescan {

namespace {

// Box-Muller on a per-(i, pair) stream; cells 2p and 2p+1 share the pair and
// take the cos/sin halves respectively.
double normal_cell(std::uint64_t key, std::size_t i, std::size_t j) {
  const std::uint64_t row =
      rng::mix64(key + (static_cast<std::uint64_t>(i) + 1) * rng::kGolden);
  const std::uint64_t pair = j >> 1;
  const std::uint64_t h = rng::mix64(row + (pair + 1) * rng::kGolden);
  const double a = rng::u01_open(rng::stream_word(h, 0));
  const double b = rng::u01_open(rng::stream_word(h, 1));
  const double r = std::sqrt(-2.0 * std::log(a));
  const double theta = 2.0 * std::numbers::pi * b;
  return (j & 1) == 0 ? r * std::cos(theta) : r * std::sin(theta);
}

void check_dims(const GaussianDesignSeed& seed, std::size_t i, std::size_t j) {
  if (i >= seed.n || j >= seed.m) {
    throw std::out_of_range("gaussian design cell outside n x m");
  }
}

}  // namespace

double gaussian_cell(const GaussianDesignSeed& seed, std::size_t i,
                     std::size_t j) {
  check_dims(seed, i, j);
  return normal_cell(seed.key(), i, j);
}

std::vector<double> encode_gaussian(const SparseSignal& signal,
                                    const GaussianDesignSeed& seed) {
  if (signal.n() != seed.n) {
    throw std::invalid_argument("signal length does not match design n");
  }
  std::vector<double> y(seed.m, 0.0);
  const std::uint64_t key = seed.key();
  for (const auto& [i, value] : signal.entries()) {
    for (std::size_t j = 0; j < seed.m; ++j) {
      y[j] += value * normal_cell(key, i, j);
    }
  }
  return y;
}

namespace detail {

SignEstimate select_top_by_magnitude(const std::vector<double>& values,
                                     std::size_t k) {
  const std::size_t n = values.size();
  if (k > n) throw std::invalid_argument("k exceeds signal length");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  SignEstimate est;
  est.n = n;
  est.signs.assign(n, 0);
  est.support.assign(order.begin(), order.begin() + k);
  for (std::size_t i : est.support) {
    est.signs[i] = values[i] < 0.0 ? -1 : 1;
  }
  return est;
}

}  // namespace detail

SignEstimate marginal_regression_decode(const SignMeasurements& signs,
                                        const GaussianDesignSeed& seed,
                                        std::size_t k) {
  if (signs.m != seed.m) {
    throw std::invalid_argument("sign measurements do not match design");
  }
  if (k > seed.n) throw std::invalid_argument("k exceeds signal length");
  const std::uint64_t key = seed.key();
  const std::vector<double> xhat = detail::marginal_scores(
      signs.signs, seed.n, seed.m,
      [&](std::size_t i, std::size_t j) { return normal_cell(key, i, j); });
  return detail::select_top_by_magnitude(xhat, k);
}

SignEstimate biht_decode(const SignMeasurements& signs,
                         const GaussianDesignSeed& seed, std::size_t k,
                         const BihtOptions& options) {
  if (signs.m != seed.m) {
    throw std::invalid_argument("sign measurements do not match design");
  }
  if (k > seed.n || k == 0) throw std::invalid_argument("bad sparsity k");
  if (options.iters == 0) {
    throw std::invalid_argument("biht needs at least one iteration");
  }
  const auto n = static_cast<long>(seed.n);
  const auto m = static_cast<long>(seed.m);

  Eigen::MatrixXd design(n, m);
  const std::uint64_t key = seed.key();
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < m; ++j) {
      design(i, j) = normal_cell(key, static_cast<std::size_t>(i),
                                 static_cast<std::size_t>(j));
    }
  }
  Eigen::VectorXd target(m);
  for (long j = 0; j < m; ++j) target(j) = signs.signs[j];

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd residual(m);
  std::vector<std::size_t> order(seed.n);
  const double scale = options.step / static_cast<double>(seed.m);
  for (std::size_t it = 0; it < options.iters; ++it) {
    Eigen::VectorXd projected = design.transpose() * x;
    for (long j = 0; j < m; ++j) {
      const double s = (projected(j) > 0.0) - (projected(j) < 0.0);
      residual(j) = target(j) - s;
    }
    Eigen::VectorXd gradient = x + scale * (design * residual);
    if (!gradient.allFinite()) {
      throw std::runtime_error("biht iterate diverged to non-finite values");
    }
    // Hard-threshold to the k largest magnitudes, then renormalize.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::nth_element(order.begin(), order.begin() + (k - 1), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       const double ma = std::abs(gradient(static_cast<long>(a)));
                       const double mb = std::abs(gradient(static_cast<long>(b)));
                       if (ma != mb) return ma > mb;
                       return a < b;
                     });
    x.setZero();
    for (std::size_t c = 0; c < k; ++c) {
      const auto idx = static_cast<long>(order[c]);
      x(idx) = gradient(idx);
    }
    const double norm = x.norm();
    if (norm > 0.0) x /= norm;
  }

  std::vector<double> final_iterate(x.data(), x.data() + n);
  return detail::select_top_by_magnitude(final_iterate, k);
}

}  // namespace onescan
