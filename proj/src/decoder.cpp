// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/decoder.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace onescan {

std::pair<double, double> score_contribution(int sign_product, double w,
                                             double k) {
  constexpr double kLogFloor = 1e-300;
  const double z = std::exp(-(k - 1.0) * w);
  const double a = sign_product > 0 ? z : -z;
  const double plus = 1.0 + a < kLogFloor ? std::log(kLogFloor) : std::log1p(a);
  const double minus = 1.0 - a < kLogFloor ? std::log(kLogFloor) : std::log1p(-a);
  return {plus, minus};
}

ScoreTable compute_scores(const SignMeasurements& signs, const DesignSeed& seed,
                          double k) {
  if (signs.m != seed.m || signs.signs.size() != seed.m) {
    throw std::invalid_argument("sign measurements do not match design seed");
  }
  const int* data = signs.signs.data();
  return compute_scores_stream([data](std::size_t j) { return data[j]; }, seed,
                               signs.m, k);
}

SignEstimate estimate_signs_threshold(const ScoreTable& scores) {
  SignEstimate est;
  est.n = scores.n;
  est.signs.assign(scores.n, 0);
  for (std::size_t i = 0; i < scores.n; ++i) {
    if (scores.q_plus[i] > 0.0) {
      est.signs[i] = 1;
    } else if (scores.q_minus[i] > 0.0) {
      est.signs[i] = -1;
    }
    if (est.signs[i] != 0) est.support.push_back(i);
  }
  return est;
}

SignEstimate estimate_signs_topk(const ScoreTable& scores, double k,
                                 double beta) {
  if (!(k >= 1.0) || !(beta >= 1.0)) {
    throw std::invalid_argument("need k >= 1 and beta >= 1");
  }
  const double raw = std::floor(beta * k);
  if (!(raw >= 1.0) || raw > static_cast<double>(scores.n)) {
    throw std::invalid_argument("floor(beta * k) outside [1, n]");
  }
  const auto size = static_cast<std::size_t>(raw);

  std::vector<std::size_t> order(scores.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = std::max(scores.q_plus[a], scores.q_minus[a]);
    const double sb = std::max(scores.q_plus[b], scores.q_minus[b]);
    if (sa != sb) return sa > sb;
    return a < b;
  });

  SignEstimate est;
  est.n = scores.n;
  est.signs.assign(scores.n, 0);
  est.support.assign(order.begin(), order.begin() + size);
  for (std::size_t i : est.support) {
    est.signs[i] = scores.q_minus[i] > scores.q_plus[i] ? -1 : 1;
  }
  return est;
}

namespace detail {

std::vector<double> solve_least_squares(const std::vector<double>& a,
                                        std::size_t m, std::size_t s,
                                        const std::vector<double>& y) {
  Eigen::MatrixXd mat(m, s);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t c = 0; c < s; ++c) mat(j, c) = a[j * s + c];
  }
  Eigen::Map<const Eigen::VectorXd> rhs(y.data(), static_cast<long>(m));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(mat);
  if (qr.rank() < static_cast<long>(s)) {
    throw std::runtime_error("restricted design is rank deficient");
  }
  Eigen::VectorXd sol = qr.solve(rhs);
  return {sol.data(), sol.data() + sol.size()};
}

}  // namespace detail

std::vector<double> refine_values(const std::vector<std::size_t>& support,
                                  const RawMeasurements& extra) {
  if (support.empty()) return {};
  std::set<std::size_t> uniq(support.begin(), support.end());
  if (uniq.size() != support.size()) {
    throw std::invalid_argument("duplicate indices in support");
  }
  if (extra.alpha != 2.0) {
    throw std::invalid_argument("value refinement requires a Gaussian "
                                "(alpha = 2) measurement batch");
  }
  if (extra.m < support.size()) {
    throw std::invalid_argument("need at least |support| extra measurements");
  }
  const std::size_t s = support.size();
  std::vector<double> a(extra.m * s);
  for (std::size_t c = 0; c < s; ++c) {
    const std::size_t i = support[c];
    if (i >= extra.seed.n) {
      throw std::invalid_argument("support index outside design length");
    }
    for (std::size_t j = 0; j < extra.m; ++j) {
      const CellDraw d = cell(extra.seed, i, j);
      a[j * s + c] = cms_transform(d.u, d.w, 2.0);
    }
  }
  return detail::solve_least_squares(a, extra.m, s, extra.y);
}

std::string score_table_csv(const ScoreTable& scores) {
  std::ostringstream out;
  out.precision(17);
  out << "i,q_plus,q_minus\n";
  for (std::size_t i = 0; i < scores.n; ++i) {
    out << i << ',' << scores.q_plus[i] << ',' << scores.q_minus[i] << '\n';
  }
  return out.str();
}

}  // namespace onescan
