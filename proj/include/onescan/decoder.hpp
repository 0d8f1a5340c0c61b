// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// One-scan sign decoding. Per coordinate i the decoder accumulates the two
// scores
//   q+_i = sum_j log(1 + sgn(y_j) sgn(u_ij) e^{-(k-1) w_ij})
//   q-_i = sum_j log(1 - sgn(y_j) sgn(u_ij) e^{-(k-1) w_ij})
// in a single pass over the measurement signs, then estimates sgn(x_i)
// either by the zero-threshold rule or by top-(beta*k) ranking.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "onescan/encoder.hpp"
#include "onescan/stable.hpp"

namespace onescan {

struct ScoreTable {
  std::size_t n{0};
  std::vector<double> q_plus;
  std::vector<double> q_minus;
  double k_used{0.0};  // sparsity level plugged into the exponent
};

struct SignEstimate {
  std::size_t n{0};
  std::vector<int> signs;                // per coordinate, in {-1, 0, +1}
  std::vector<std::size_t> support;      // selected coordinates, rank order
};

// Score contribution of one measurement with sign product
// s = sgn(y_j) * sgn(u_ij) in {-1, +1}: (log(1 + s z), log(1 - s z)) with
// z = e^{-(k-1) w}. The log argument is floored at 1e-300 so a single
// z == 1 rounding event cannot drive a whole coordinate to -inf; this guard
// is a numerical safeguard, not part of the scoring rule.
std::pair<double, double> score_contribution(int sign_product, double w,
                                             double k);

// One pass over the sign stream per coordinate; measurements with sign 0
// contribute exactly 0. sign_at(j) must return an int in {-1, 0, +1}.
// Cost O(n * m), O(1) state per coordinate beyond the two accumulators.
template <typename SignFn>
ScoreTable compute_scores_stream(SignFn&& sign_at, const DesignSeed& seed,
                                 std::size_t m, double k);

// Throws std::invalid_argument if k < 1 or if the measurement count does not
// match the seed geometry.
ScoreTable compute_scores(const SignMeasurements& signs, const DesignSeed& seed,
                          double k);

// Zero-threshold rule: +1 if q+ > 0, -1 if q- > 0, else 0. At most one score
// can be positive, so the rule is well defined; (0, 0) maps to 0.
SignEstimate estimate_signs_threshold(const ScoreTable& scores);

// Ranking rule: selects the floor(beta * k) coordinates with the largest
// max(q+, q-), ties broken by lower index. Sign is +1 if q+ > q-, -1 if
// q- > q+, +1 on a tie. Throws std::invalid_argument when floor(beta * k)
// falls outside [1, n].
SignEstimate estimate_signs_topk(const ScoreTable& scores, double k,
                                 double beta);

// Least-squares refinement of the values on an estimated support, from a
// batch of full-precision measurements taken against a Gaussian (alpha = 2)
// design. Returns one value per support coordinate (empty support -> empty).
// Throws std::invalid_argument on duplicate support indices, non-Gaussian
// design, or fewer measurements than support coordinates, and
// std::runtime_error if the restricted design is rank deficient.
std::vector<double> refine_values(const std::vector<std::size_t>& support,
                                  const RawMeasurements& extra);

namespace detail {
// Solver core, separated so rank handling is testable with an explicit
// matrix. a is row-major m x s.
std::vector<double> solve_least_squares(const std::vector<double>& a,
                                        std::size_t m, std::size_t s,
                                        const std::vector<double>& y);
}  // namespace detail

// CSV dump of a score table with header i,q_plus,q_minus.
std::string score_table_csv(const ScoreTable& scores);

// --- implementation ---------------------------------------------------------

template <typename SignFn>
ScoreTable compute_scores_stream(SignFn&& sign_at, const DesignSeed& seed,
                                 std::size_t m, double k) {
  if (!(k >= 1.0)) {
    throw std::invalid_argument("sparsity level k must be >= 1");
  }
  if (m == 0 || m != seed.m) {
    throw std::invalid_argument("measurement count does not match design");
  }
  ScoreTable table;
  table.n = seed.n;
  table.k_used = k;
  table.q_plus.assign(seed.n, 0.0);
  table.q_minus.assign(seed.n, 0.0);
  for (std::size_t i = 0; i < seed.n; ++i) {
    const CellRow row = cell_row(seed, i);
    double qp = 0.0;
    double qm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const int s = sign_at(j);
      if (s == 0) continue;
      const std::uint64_t base = cell_base(row, j);
      const auto [tp, tm] =
          score_contribution(s * row_sign_u(base), row_w(base), k);
      qp += tp;
      qm += tm;
    }
    table.q_plus[i] = qp;
    table.q_minus[i] = qm;
  }
  return table;
}

}  // namespace onescan
