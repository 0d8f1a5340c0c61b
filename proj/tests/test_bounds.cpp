// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "onescan/bounds.hpp"
#include "onescan/decoder.hpp"
#include "onescan/encoder.hpp"
#include "onescan/parallel.hpp"
#include "oracles.hpp"

using namespace onescan;

TEST_CASE("false-positive exponent: structural zeros") {
  for (double eps : {-0.3, 0.0, 0.25}) {
    for (double k : {2.0, 7.0, kInfiniteSparsity}) {
      CHECK(false_positive_exponent(0.0, eps, k) == 0.0);
    }
  }
  // At t = 1 every even series term carries the factor (t - 1).
  CHECK(false_positive_exponent(1.0, 0.0, 9.0) == 0.0);
  CHECK(false_positive_exponent(1.0, 0.0, kInfiniteSparsity) == 0.0);
}

TEST_CASE("false-positive series matches quadrature, including t > 1") {
  std::mt19937_64 engine(42);
  std::uniform_real_distribution<double> tdist(0.05, 2.8);
  std::uniform_real_distribution<double> edist(-0.3, 0.3);
  std::uniform_int_distribution<int> kdist(2, 150);
  for (int r = 0; r < 8; ++r) {
    const double t = tdist(engine);
    const double eps = edist(engine);
    const double k = kdist(engine);
    const double series = false_positive_exponent(t, eps, k);
    const double quad = oracles::fp_exponent_quadrature(t, eps, k);
    // The evaluator's own tolerance is 1e-8 absolute.
    CHECK(std::abs(series - quad) <= 5e-8);
  }
  // Integer t terminates the series exactly.
  CHECK(std::abs(false_positive_exponent(3.0, 0.1, 10.0) -
                 oracles::fp_exponent_quadrature(3.0, 0.1, 10.0)) <= 1e-9);
}

TEST_CASE("false-negative series matches the literal nested quadrature") {
  const double bracket_series =
      std::exp((false_negative_exponent(0.5, 0.0, 10.0) - 0.0) / -10.0);
  const double bracket_quad = oracles::fn_bracket_quadrature(0.5, 10.0);
  CHECK(bracket_series == doctest::Approx(bracket_quad).epsilon(1e-6));

  std::mt19937_64 engine(43);
  std::uniform_real_distribution<double> tdist(0.05, 0.95);
  std::uniform_real_distribution<double> edist(-0.3, 0.3);
  std::uniform_int_distribution<int> kdist(2, 150);
  for (int r = 0; r < 6; ++r) {
    const double t = tdist(engine);
    const double eps = edist(engine);
    const double k = kdist(engine);
    const double series = false_negative_exponent(t, eps, k);
    const double quad = oracles::fn_exponent_quadrature(t, eps, k);
    CHECK(std::abs(series - quad) <= 5e-7);
  }
}

TEST_CASE("exponent domains") {
  CHECK_THROWS_AS(false_positive_exponent(-0.1, 0.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(false_positive_exponent(0.5, 0.0, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(false_negative_exponent(0.0, 0.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(false_negative_exponent(1.0, 0.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(flip_false_negative_exponent(0.5, 0.0, 5.0, 0.7),
                  std::invalid_argument);
  CHECK_THROWS_AS(flip_false_negative_exponent(0.5, 0.0, 5.0, -0.1),
                  std::invalid_argument);
}

TEST_CASE("flip exponent reduces to the clean one at gamma = 0") {
  for (double t : {0.1, 0.45, 0.8}) {
    for (double k : {2.0, 7.0, kInfiniteSparsity}) {
      CHECK(flip_false_negative_exponent(t, 0.1, k, 0.0) ==
            false_negative_exponent(t, 0.1, k));
    }
  }
}

TEST_CASE("flip exponent: gamma = 1/2 admits no positive value at eps = 0") {
  for (double k : {5.0, kInfiniteSparsity}) {
    for (int g = 1; g < 40; ++g) {
      const double t = g / 40.0;
      CHECK(flip_false_negative_exponent(t, 0.0, k, 0.5) <= 1e-12);
    }
  }
}

TEST_CASE("flip exponent decreases in gamma") {
  for (double t : {0.2, 0.5}) {
    for (double k : {5.0, 50.0, kInfiniteSparsity}) {
      double prev = flip_false_negative_exponent(t, 0.0, k, 0.0);
      for (double gamma : {0.05, 0.1, 0.2, 0.35, 0.5}) {
        const double cur = flip_false_negative_exponent(t, 0.0, k, gamma);
        CHECK(cur < prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("optimized exponents at eps = 0 (independently computed anchors)") {
  struct Anchor {
    double k;
    double t_star;
    double h_star;
  };
  // From an independent high-accuracy evaluation of the same series.
  const Anchor anchors[] = {
      {5.0, 0.450600407, 0.093101368356},
      {10.0, 0.452294616, 0.086910832770},
      {100.0, 0.453582390, 0.082041262910},
      {kInfiniteSparsity, 0.453713894, 0.081535513881},
  };
  for (const Anchor& a : anchors) {
    const BoundResult fp =
        optimize_exponent(ExponentKind::kFalsePositive, {0.0, a.k, 0.0});
    CHECK(std::abs(fp.t_star - a.t_star) <= 1e-4);
    CHECK(std::abs(fp.h_star - a.h_star) <= 1e-8);
    // The false-negative exponent mirrors it: t* -> 1 - t*, same maximum.
    const BoundResult fn =
        optimize_exponent(ExponentKind::kFalseNegative, {0.0, a.k, 0.0});
    CHECK(std::abs(fn.t_star - (1.0 - a.t_star)) <= 1e-4);
    CHECK(std::abs(fn.h_star - a.h_star) <= 1e-8);
  }
}

TEST_CASE("optimized flip exponents at eps = 0") {
  const BoundResult a = optimize_exponent(ExponentKind::kFlipFalseNegative,
                                          {0.0, 5.0, 0.1});
  CHECK(std::abs(a.h_star - 0.015996933218) <= 1e-8);
  const BoundResult b = optimize_exponent(ExponentKind::kFlipFalseNegative,
                                          {0.0, kInfiniteSparsity, 0.1});
  CHECK(std::abs(b.h_star - 0.014889318959) <= 1e-8);
  const BoundResult c = optimize_exponent(ExponentKind::kFlipFalseNegative,
                                          {0.0, kInfiniteSparsity, 0.5});
  CHECK(c.h_star <= 1e-9);
  CHECK(!c.useful());
  CHECK(c.bound_at(100.0) == 1.0);
}

TEST_CASE("large-K insensitivity of the optimum") {
  const double h100 =
      optimize_exponent(ExponentKind::kFalsePositive, {0.0, 100.0, 0.0}).h_star;
  const double hinf =
      optimize_exponent(ExponentKind::kFalsePositive,
                        {0.0, kInfiniteSparsity, 0.0})
          .h_star;
  CHECK(std::abs(h100 - hinf) < 0.01 * hinf);
}

TEST_CASE("optimizer result dominates grid probes") {
  const BoundQuery q{0.15, 20.0, 0.0};
  const BoundResult r = optimize_exponent(ExponentKind::kFalsePositive, q);
  for (int g = 1; g <= 400; ++g) {
    const double t = 40.0 * g / 400.0;
    CHECK(r.h_star >= false_positive_exponent(t, q.epsilon, q.k) - 1e-7);
  }
  CHECK(r.bound_at(100.0) > r.bound_at(200.0));
}

TEST_CASE("optimizer reports a cap hit for runaway exponents") {
  CHECK_THROWS_AS(
      optimize_exponent(ExponentKind::kFalsePositive, {10.0, 5.0, 0.0}),
      std::runtime_error);
}

TEST_CASE("series truncation semantics") {
  const SeriesControl base{1e-8, 40'000'000};
  const SeriesControl doubled{1e-8, 80'000'000};
  for (double t : {0.3, 0.45, 0.7}) {
    const double a = false_positive_exponent(t, 0.0, 10.0, base);
    const double b = false_positive_exponent(t, 0.0, 10.0, doubled);
    CHECK(std::abs(a - b) < 1e-10);
    const double c = false_negative_exponent(t, 0.0, 10.0, base);
    const double d = false_negative_exponent(t, 0.0, 10.0, doubled);
    CHECK(std::abs(c - d) < 1e-10);
  }
  CHECK_THROWS_AS(false_positive_exponent(0.5, 0.0, 10.0, SeriesControl{1e-12, 10}),
                  SeriesNonConvergence);
}

TEST_CASE("small-t expansion: the quadratic series term dominates") {
  // h + t(t-1)/4 is the n >= 4 series remainder; its magnitude is linear in
  // t with slope sum 1/n^2 over even n >= 4 (~0.161) for the false-positive
  // exponent and ~0.032 for the false-negative one.
  for (double t : {0.01, 0.02, 0.05}) {
    const double h1 = false_positive_exponent(t, 0.0, kInfiniteSparsity);
    CHECK(std::abs(h1 + t * (t - 1.0) / 4.0) <= 0.2 * t);
    const double h2 = false_negative_exponent(t, 0.0, kInfiniteSparsity);
    CHECK(std::abs(h2 + t * (t - 1.0) / 4.0) <= 0.05 * t);
  }
}

TEST_CASE("sample complexity") {
  CHECK(sample_complexity(20, 1000, 0.05) == 2437);
  CHECK(sample_complexity(20, 1000, 0.01) == 2833);
  CHECK(sample_complexity(1, 2, 0.5) == 18);
  CHECK_THROWS_AS(sample_complexity(0, 10, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(sample_complexity(10, 5, 0.1), std::invalid_argument);

  SUBCASE("general solver agrees with the closed form at 1/H = 12.3") {
    const double h = 1.0 / 12.3;
    for (const auto& [k, n, delta] :
         {std::tuple{20.0, 1000.0, 0.05}, {5.0, 200.0, 0.2},
          {50.0, 10000.0, 0.01}}) {
      const std::int64_t closed = sample_complexity(k, n, delta);
      const std::int64_t general =
          sample_complexity_general(k, n, delta, h, h);
      CHECK(std::abs(closed - general) <= 1);
    }
  }

  SUBCASE("true exponents never require more than the closed form") {
    const double h_fp =
        optimize_exponent(ExponentKind::kFalsePositive, {0.0, 20.0, 0.0}).h_star;
    const double h_fn =
        optimize_exponent(ExponentKind::kFalseNegative, {0.0, 20.0, 0.0}).h_star;
    CHECK(sample_complexity_general(20, 1000, 0.05, h_fp, h_fn) <=
          sample_complexity(20, 1000, 0.05));
  }

  SUBCASE("flip-heavy queries report unbounded requirements") {
    CHECK_THROWS_AS(sample_complexity(5, 200, 0.1, 0.0, 0.3), NoUsefulBound);
  }
}

TEST_CASE("false-positive bound validated by simulation") {
  // N = 200, K = 5, M from the closed form at delta = 0.2. The empirical
  // rate of q+ > 0 on zero coordinates must respect exp(-(M/K) H*).
  const std::size_t n = 200;
  const std::size_t k = 5;
  const auto m = static_cast<std::size_t>(sample_complexity(5, 200, 0.2));
  const double h_star =
      optimize_exponent(ExponentKind::kFalsePositive, {0.0, 5.0, 0.0}).h_star;
  const double bound = std::exp(-(static_cast<double>(m) / k) * h_star);

  const std::size_t trials = 500;
  std::vector<std::size_t> positives(trials, 0);
  std::vector<std::size_t> zeros(trials, 0);
  parallel_for(trials, [&](std::size_t trial) {
    std::mt19937_64 engine(7000 + trial);
    const DesignSeed seed{5000 + trial, n, m};
    const SparseSignal x = oracles::random_signal(engine, n, k, true);
    const SignMeasurements sm = quantize(encode(x, seed, 0.05));
    const ScoreTable t = compute_scores(sm, seed, static_cast<double>(k));
    const std::vector<int> truth = x.signs();
    for (std::size_t i = 0; i < n; ++i) {
      if (truth[i] != 0) continue;
      ++zeros[trial];
      positives[trial] += t.q_plus[i] > 0.0;
    }
  });
  double fp = 0.0;
  double total = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    fp += static_cast<double>(positives[trial]);
    total += static_cast<double>(zeros[trial]);
  }
  const double rate = fp / total;
  const double se = std::sqrt(std::max(rate, 1.0 / total) * (1.0 - rate) / total);
  CHECK(rate <= bound + 3.0 * se);
}
