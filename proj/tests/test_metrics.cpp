// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "onescan/metrics.hpp"
#include "oracles.hpp"

using namespace onescan;

namespace {

SignEstimate estimate_of(std::size_t n, std::vector<std::size_t> support,
                         const std::vector<int>& signs_on_support) {
  SignEstimate est;
  est.n = n;
  est.signs.assign(n, 0);
  est.support = std::move(support);
  for (std::size_t c = 0; c < est.support.size(); ++c) {
    est.signs[est.support[c]] = signs_on_support[c];
  }
  return est;
}

}  // namespace

TEST_CASE("sign error on the reported top-k") {
  const SparseSignal truth(6, {{1, 2.0}, {3, -1.0}});

  SUBCASE("perfect recovery scores zero") {
    const SignEstimate est = estimate_of(6, {1, 3}, {1, -1});
    CHECK(sign_error(est, truth, 2) == 0.0);
  }

  SUBCASE("every sign opposite scores the maximum 2") {
    const SignEstimate est = estimate_of(6, {1, 3}, {-1, 1});
    CHECK(sign_error(est, truth, 2) == 2.0);
  }

  SUBCASE("a selected true zero contributes 1/K") {
    const SignEstimate est = estimate_of(6, {1, 5}, {1, 1});
    CHECK(sign_error(est, truth, 2) == doctest::Approx(0.5));
  }

  SUBCASE("support size must equal k") {
    const SignEstimate est = estimate_of(6, {1}, {1});
    CHECK_THROWS_AS(sign_error(est, truth, 2), std::invalid_argument);
  }
}

TEST_CASE("threshold-variant sign error runs over all coordinates") {
  const SparseSignal truth(5, {{0, 1.0}, {4, -2.0}});
  SignEstimate est;
  est.n = 5;
  est.signs = {1, 0, 1, 0, 0};  // misses coordinate 4, false positive at 2
  est.support = {0, 2};
  CHECK(sign_error_all_coords(est, truth, 2) == doctest::Approx(1.0));
}

TEST_CASE("recall and the precision identity") {
  const SparseSignal truth(8, {{0, 1.0}, {2, 1.0}, {5, -1.0}});
  const SignEstimate all = estimate_of(8, {0, 2, 5, 6}, {1, 1, -1, 1});
  CHECK(recall(all, truth, 3) == doctest::Approx(1.0));
  const SignEstimate none = estimate_of(8, {1, 3}, {1, 1});
  CHECK(recall(none, truth, 3) == 0.0);

  // recall * K + false positives = |support|.
  std::mt19937_64 engine(3);
  for (int r = 0; r < 50; ++r) {
    const SparseSignal x = oracles::random_signal(engine, 40, 6, true);
    std::vector<std::size_t> support;
    std::vector<int> s;
    std::uniform_int_distribution<std::size_t> pick(0, 39);
    while (support.size() < 9) {
      const std::size_t i = pick(engine);
      bool dup = false;
      for (std::size_t q : support) dup = dup || q == i;
      if (!dup) {
        support.push_back(i);
        s.push_back(1);
      }
    }
    const SignEstimate est = estimate_of(40, support, s);
    const double rec = recall(est, x, 6);
    std::size_t false_pos = 0;
    const std::vector<int> truth_signs = x.signs();
    for (std::size_t i : est.support) false_pos += truth_signs[i] == 0;
    CHECK(rec * 6 + static_cast<double>(false_pos) ==
          doctest::Approx(static_cast<double>(est.support.size())));
  }
}

TEST_CASE("larger selections never lose recall over their prefix") {
  std::mt19937_64 engine(77);
  const DesignSeed seed{31, 60, 150};
  for (int r = 0; r < 20; ++r) {
    const SparseSignal x = oracles::random_signal(engine, 60, 5, false);
    const SignMeasurements sm = quantize(encode(x, seed, 0.05));
    const ScoreTable scores = compute_scores(sm, seed, 5.0);
    double prev = -1.0;
    for (double beta : {1.0, 1.2, 1.5, 2.0}) {
      const SignEstimate est = estimate_signs_topk(scores, 5.0, beta);
      const double rec = recall(est, x, 5);
      CHECK(rec >= prev);
      prev = rec;
    }
  }
}
