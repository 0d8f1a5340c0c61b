// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace onescan {

namespace {

void validate_k(double k) {
  if (std::isinf(k)) return;
  if (!(k >= 2.0)) {
    throw std::invalid_argument("sparsity k must be >= 2 or infinite");
  }
}

// Kahan-compensated accumulator; the series run into millions of terms.
struct Accum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Sum over even n >= 2 of binom(t, n) / (n(k-1)+1)   (finite k)
//                    or binom(t, n) / n              (infinite k).
// Summand decays like n^-(t+2); the integral test gives the tail bound.
double fp_bracket_sum(double t, double k, double tol, std::uint64_t n_max) {
  const bool infinite = std::isinf(k);
  Accum acc;
  double coeff = t * (t - 1.0) / 2.0;  // binom(t, 2)
  double n = 2.0;
  while (true) {
    const double term = infinite ? coeff / n : coeff / (n * (k - 1.0) + 1.0);
    acc.add(term);
    if (n > t + 2.0) {
      const double tail_bound = std::abs(term) * n / (t + 1.0);
      if (tail_bound < tol) break;
    }
    if (n >= static_cast<double>(n_max)) {
      throw SeriesNonConvergence(
          "false-positive series not converged by n = " + std::to_string(n));
    }
    coeff *= (t - n) * (t - n - 1.0) / ((n + 1.0) * (n + 2.0));
    n += 2.0;
  }
  return acc.sum;
}

// The rising-factorial series with even terms at 1/(n(k-1)+1) and odd terms
// subtracted at 1/((n+1)(k-1)+1) telescopes pairwise: the odd term at n and
// the even term at n+1 share a denominator, leaving
//   sum over odd n of r_n (t-1) / ((n+1) D(n+1)),
// r_n = rising(t, n)/n!, D(m) = m(k-1)+1 (or m when k is infinite).
// The pair summand decays like n^(t-3).
double fn_pair_sum(double t, double k, double tol, std::uint64_t n_max) {
  const bool infinite = std::isinf(k);
  Accum acc;
  double rising = t;  // r_1
  double n = 1.0;
  while (true) {
    const double denom = infinite
                             ? (n + 1.0) * (n + 1.0)
                             : (n + 1.0) * ((n + 1.0) * (k - 1.0) + 1.0);
    const double pair = rising * (t - 1.0) / denom;
    acc.add(pair);
    const double tail_bound = std::abs(pair) * n / (2.0 - t);
    if (tail_bound < tol) break;
    if (n >= static_cast<double>(n_max)) {
      throw SeriesNonConvergence(
          "false-negative series not converged by n = " + std::to_string(n));
    }
    rising *= (t + n) * (t + n + 1.0) / ((n + 1.0) * (n + 2.0));
    n += 2.0;
  }
  return acc.sum;
}

// 32-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 32> kGlNodes = {
    -9.97263861849481570e-01, -9.85611511545268382e-01,
    -9.64762255587506390e-01, -9.34906075937739667e-01,
    -8.96321155766052202e-01, -8.49367613732569970e-01,
    -7.94483795967942386e-01, -7.32182118740289711e-01,
    -6.63044266930215231e-01, -5.87715757240762304e-01,
    -5.06899908932229359e-01, -4.21351276130635333e-01,
    -3.31868602282127667e-01, -2.39287362252137065e-01,
    -1.44471961582796488e-01, -4.83076656877383104e-02,
    +4.83076656877383104e-02, +1.44471961582796488e-01,
    +2.39287362252137065e-01, +3.31868602282127667e-01,
    +4.21351276130635333e-01, +5.06899908932229359e-01,
    +5.87715757240762304e-01, +6.63044266930215231e-01,
    +7.32182118740289711e-01, +7.94483795967942386e-01,
    +8.49367613732569970e-01, +8.96321155766052202e-01,
    +9.34906075937739667e-01, +9.64762255587506390e-01,
    +9.85611511545268382e-01, +9.97263861849481570e-01,
};
constexpr std::array<double, 32> kGlWeights = {
    7.01861000946929839e-03, 1.62743947309059653e-02,
    2.53920653092624266e-02, 3.42738629130216257e-02,
    4.28358980222264263e-02, 5.09980592623762441e-02,
    5.86840934785357038e-02, 6.58222227763617523e-02,
    7.23457941088484491e-02, 7.81938957870703111e-02,
    8.33119242269468457e-02, 8.76520930044039082e-02,
    9.11738786957638631e-02, 9.38443990808045664e-02,
    9.56387200792748332e-02, 9.65400885147278121e-02,
    9.65400885147278121e-02, 9.56387200792748332e-02,
    9.38443990808045664e-02, 9.11738786957638631e-02,
    8.76520930044039082e-02, 8.33119242269468457e-02,
    7.81938957870703111e-02, 7.23457941088484491e-02,
    6.58222227763617523e-02, 5.86840934785357038e-02,
    5.09980592623762441e-02, 4.28358980222264263e-02,
    3.42738629130216257e-02, 2.53920653092624266e-02,
    1.62743947309059653e-02, 7.01861000946929839e-03,
};

// int_0^1 x^c (1+x)^{-t} dx without quadrature trouble at the x = 0 corner:
// binomial series on [0, 1/2] (geometric convergence), Gauss-Legendre on
// [1/2, 1] where the integrand is analytic.
double int_pow_one_plus(double c, double t) {
  double series = 0.0;
  double rising = 1.0;  // rising(t, j) / j! at j = 0
  double sign = 1.0;
  for (int j = 0; j < 400; ++j) {
    const double p = c + 1.0 + j;
    const double term = sign * rising * std::exp2(-p) / p;
    series += term;
    if (std::abs(term) < 1e-18 * std::max(1e-30, std::abs(series))) break;
    rising *= (t + j) / (j + 1.0);
    sign = -sign;
  }
  double gl = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double x = 0.75 + 0.25 * kGlNodes[i];  // [1/2, 1]
    gl += kGlWeights[i] * std::pow(x, c) * std::pow(1.0 + x, -t);
  }
  gl *= 0.25;
  return series + gl;
}

// Sum over odd n of rising(t, n)/n! / ((n+1)(k-1)+1). Converges like
// n^(t-2), far too slowly to sum directly, but it equals
//   (1/(2b)) int_0^1 x^(1/b) [(1-x)^{-t} - (1+x)^{-t}] dx,  b = k-1,
// whose singular half is the Beta function B(1/b + 1, 1 - t).
double flip_odd_sum(double t, double k) {
  if (std::isinf(k)) {
    // Closed form of sum over odd n of rising(t,n)/n!/(n+1).
    return (2.0 - std::exp2(1.0 - t)) / (2.0 * (1.0 - t));
  }
  const double b = k - 1.0;
  const double c = 1.0 / b;
  const double beta = std::exp(std::lgamma(c + 1.0) + std::lgamma(1.0 - t) -
                               std::lgamma(c + 2.0 - t));
  return (beta - int_pow_one_plus(c, t)) / (2.0 * b);
}

void validate_fn_domain(double t) {
  if (!(t > 0.0) || !(t < 1.0)) {
    throw std::domain_error("false-negative exponents require t in (0, 1)");
  }
}

// Absolute tolerance carried into the bracket sum. The bracket is bounded
// below by 1/2, so d(K log bracket) <= 2 K d(bracket).
double bracket_tol(double tol, double k) {
  return std::isinf(k) ? tol : 0.5 * tol / k;
}

double golden_invphi() { return 0.61803398874989485; }

struct GoldenResult {
  double t;
  double value;
};

template <typename F>
GoldenResult golden_maximize(F&& f, double lo, double hi, double xtol) {
  const double q = golden_invphi();
  double c = hi - q * (hi - lo);
  double d = lo + q * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  GoldenResult best = fc >= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
  while (hi - lo > xtol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - q * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + q * (hi - lo);
      fd = f(d);
    }
    const GoldenResult cand = fc >= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
    if (cand.value > best.value) best = cand;
  }
  return best;
}

}  // namespace

double false_positive_exponent(double t, double epsilon, double k,
                               const SeriesControl& control) {
  validate_k(k);
  if (!(t >= 0.0)) {
    throw std::domain_error("false-positive exponent requires t >= 0");
  }
  const double s =
      fp_bracket_sum(t, k, bracket_tol(control.tol, k), control.n_max);
  if (std::isinf(k)) return epsilon * t - s;
  return epsilon * t - k * std::log1p(s);
}

double false_negative_exponent(double t, double epsilon, double k,
                               const SeriesControl& control) {
  validate_k(k);
  validate_fn_domain(t);
  const double s =
      fn_pair_sum(t, k, bracket_tol(control.tol, k), control.n_max);
  if (std::isinf(k)) return -epsilon * t - s;
  return -epsilon * t - k * std::log1p(s);
}

double flip_false_negative_exponent(double t, double epsilon, double k,
                                    double gamma,
                                    const SeriesControl& control) {
  validate_k(k);
  validate_fn_domain(t);
  if (!(gamma >= 0.0) || !(gamma <= 0.5)) {
    throw std::invalid_argument("flip probability must lie in [0, 1/2]");
  }
  const double s =
      fn_pair_sum(t, k, bracket_tol(control.tol, k), control.n_max);
  const double odd = gamma == 0.0 ? 0.0 : flip_odd_sum(t, k);
  if (std::isinf(k)) return -epsilon * t - (s + 2.0 * gamma * odd);
  return -epsilon * t - k * std::log1p(s + 2.0 * gamma * odd);
}

double BoundResult::bound_at(double m) const {
  if (!useful()) return 1.0;
  if (std::isinf(k)) {
    throw std::invalid_argument("bound_at needs a finite sparsity");
  }
  return std::exp(-(m / k) * h_star);
}

BoundResult optimize_exponent(ExponentKind kind, const BoundQuery& query) {
  validate_k(query.k);
  const bool fp = kind == ExponentKind::kFalsePositive;
  constexpr double kTCap = 40.0;
  constexpr int kGridPoints = 400;

  const SeriesControl fast{3e-7, 20'000'000};
  const SeriesControl tight_ctrl{1e-10, 200'000'000};

  auto eval = [&](double t, const SeriesControl& c) {
    switch (kind) {
      case ExponentKind::kFalsePositive:
        return false_positive_exponent(t, query.epsilon, query.k, c);
      case ExponentKind::kFalseNegative:
        return false_negative_exponent(t, query.epsilon, query.k, c);
      case ExponentKind::kFlipFalseNegative:
        return flip_false_negative_exponent(t, query.epsilon, query.k,
                                            query.gamma, c);
    }
    throw std::logic_error("unreachable");
  };

  // Grid seeding. For the false-positive exponent t = 0 contributes the
  // known value 0; the other domains are open so the grid stays interior.
  double best_t = fp ? 0.0 : 1.0 / (kGridPoints + 1);
  double best_v = fp ? 0.0 : eval(best_t, fast);
  int best_g = 0;
  std::vector<double> grid(kGridPoints);
  for (int g = 1; g <= kGridPoints; ++g) {
    const double t = fp ? kTCap * g / kGridPoints
                        : static_cast<double>(g) / (kGridPoints + 1);
    grid[g - 1] = t;
    const double v = eval(t, fast);
    if (v > best_v) {
      best_v = v;
      best_t = t;
      best_g = g;
    }
  }

  const double lo_edge = fp ? 0.0 : 1e-9;
  const double hi_edge = fp ? kTCap : 1.0 - 1e-9;
  const double lo = best_g >= 2 ? grid[best_g - 2] : lo_edge;
  const double hi =
      best_g + 1 <= kGridPoints ? grid[std::min(best_g, kGridPoints - 1)] : hi_edge;
  const GoldenResult refined = golden_maximize(
      [&](double t) { return eval(t, fast); }, lo, hi, 1e-6);

  double t_star = refined.value >= best_v ? refined.t : best_t;
  double h_star = eval(t_star, tight_ctrl);
  // Keep the invariant h_star >= any probed grid value even if the golden
  // pass landed on a slightly worse spot under the tight tolerance.
  const double grid_best_tight = best_g == 0 ? best_v : eval(best_t, tight_ctrl);
  if (grid_best_tight > h_star) {
    t_star = best_t;
    h_star = grid_best_tight;
  }

  if (fp && t_star > kTCap - 1e-3) {
    throw std::runtime_error(
        "false-positive optimum hit the t cap; exponent unbounded above");
  }
  return BoundResult{t_star, h_star, query.k};
}

std::int64_t sample_complexity_general(double k, double n_len, double delta,
                                       double h_fp, double h_fn) {
  if (!(h_fp > 0.0) || !(h_fn > 0.0)) {
    throw NoUsefulBound("no positive exponent; required measurements unbounded");
  }
  const double a = h_fp / k;
  const double c = h_fn / k;
  const auto total = [&](double m) {
    return (n_len - k) * std::exp(-a * m) + k * std::exp(-c * m);
  };
  double hi = 1.0;
  while (total(hi) > delta) {
    hi *= 2.0;
    if (hi > 1e15) {
      throw NoUsefulBound("sample complexity exceeds 1e15 measurements");
    }
  }
  std::int64_t lo_i = 0;
  auto hi_i = static_cast<std::int64_t>(hi);
  while (lo_i + 1 < hi_i) {
    const std::int64_t mid = lo_i + (hi_i - lo_i) / 2;
    if (total(static_cast<double>(mid)) <= delta) {
      hi_i = mid;
    } else {
      lo_i = mid;
    }
  }
  return hi_i;
}

std::int64_t sample_complexity(double k, double n_len, double delta,
                               double epsilon, double gamma) {
  if (!(k >= 1.0) || !(n_len > k) || !(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("need k >= 1, n_len > k, delta in (0, 1)");
  }
  if (epsilon == 0.0 && gamma == 0.0) {
    return static_cast<std::int64_t>(
        std::ceil(12.3 * k * std::log(n_len / delta)));
  }
  const BoundResult fp =
      optimize_exponent(ExponentKind::kFalsePositive, {epsilon, k, 0.0});
  const BoundResult fn =
      gamma > 0.0
          ? optimize_exponent(ExponentKind::kFlipFalseNegative,
                              {epsilon, k, gamma})
          : optimize_exponent(ExponentKind::kFalseNegative, {epsilon, k, 0.0});
  if (!fp.useful() || !fn.useful()) {
    throw NoUsefulBound("no positive exponent; required measurements unbounded");
  }
  return sample_complexity_general(k, n_len, delta, fp.h_star, fn.h_star);
}

}  // namespace onescan
