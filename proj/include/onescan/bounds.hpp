// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Chernoff exponents for the sign-recovery error tails and the sample
// complexities they imply.
//
//   false_positive_exponent    eps*t - K log(1 + sum over even n of
//                              binom(t,n) / (n(K-1)+1)), t >= 0
//   false_negative_exponent    -eps*t - K log(A) with the rising-factorial
//                              series A, 0 < t < 1
//   flip_false_negative_exponent  same with the odd terms damped by (1-2g)
//
// K may be infinite, in which case the K log(.) collapses to the limiting
// series. The bound on a tail probability is exp(-(M/K) H) at M measurements.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace onescan {

inline constexpr double kInfiniteSparsity =
    std::numeric_limits<double>::infinity();

// Series evaluation knobs. tol is an absolute tolerance on the exponent
// value; terms are accumulated until an integral-test bound on the remaining
// tail drops below it. n_max is the series-index safety cap.
struct SeriesControl {
  double tol = 1e-8;
  std::uint64_t n_max = 80'000'000;
};

class SeriesNonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoUsefulBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExponentKind { kFalsePositive, kFalseNegative, kFlipFalseNegative };

// t >= 0 (overflow-safe up to the optimizer cap of 40); k >= 2 or infinite.
double false_positive_exponent(double t, double epsilon, double k,
                               const SeriesControl& control = {});

// 0 < t < 1; k >= 2 or infinite.
double false_negative_exponent(double t, double epsilon, double k,
                               const SeriesControl& control = {});

// 0 < t < 1; 0 <= gamma <= 1/2. gamma = 0 reduces exactly to
// false_negative_exponent.
double flip_false_negative_exponent(double t, double epsilon, double k,
                                    double gamma,
                                    const SeriesControl& control = {});

struct BoundQuery {
  double epsilon{0.0};
  double k{kInfiniteSparsity};  // >= 2 or infinite
  double gamma{0.0};            // flip probability, used by the flip exponent
};

struct BoundResult {
  double t_star{0.0};
  double h_star{0.0};
  double k{kInfiniteSparsity};

  // h_star <= 0 means the exponent admits no useful bound; bound_at then
  // reports the trivial bound 1.
  bool useful() const { return h_star > 0.0; }
  double bound_at(double m) const;
};

// Maximizes the chosen exponent over its t domain (t in [0, 40] for the
// false-positive exponent, (0, 1) otherwise) to absolute tolerance 1e-6 in t,
// seeded by a 400-point grid; unimodality is only assumed within the winning
// grid cell. Throws std::runtime_error if the false-positive optimum runs
// into the t = 40 cap.
BoundResult optimize_exponent(ExponentKind kind, const BoundQuery& query);

// Smallest integer M with
//   (N - K) exp(-(M/K) h_fp) + K exp(-(M/K) h_fn) <= delta.
// Both exponents must be positive.
std::int64_t sample_complexity_general(double k, double n_len, double delta,
                                       double h_fp, double h_fn);

// Measurement count sufficient for exact sign recovery with confidence
// 1 - delta. The default epsilon = 0, gamma = 0 path is the closed form
// ceil(12.3 K ln(N / delta)); otherwise the optimized exponents are solved
// numerically. Throws NoUsefulBound when no positive exponent exists
// (gamma too large).
std::int64_t sample_complexity(double k, double n_len, double delta,
                               double epsilon = 0.0, double gamma = 0.0);

}  // namespace onescan
