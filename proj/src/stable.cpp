// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace onescan {

void validate_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("stability index must lie in (0, 2], got " +
                                std::to_string(alpha));
  }
}

double cms_transform(double u, double w, double alpha) {
  validate_alpha(alpha);
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(u > -half_pi) || !(u < half_pi)) {
    throw std::domain_error("u must lie strictly inside (-pi/2, pi/2)");
  }
  if (!(w > 0.0)) {
    throw std::domain_error("w must be positive");
  }
  if (alpha == 1.0) {
    // The bracket exponent (1-alpha)/alpha vanishes, leaving sin(u)/cos(u).
    return std::tan(u);
  }
  const double head = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
  const double tail =
      std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
  return head * tail;
}

namespace {

void check_cell_index(const DesignSeed& seed, std::size_t i, std::size_t j) {
  if (i >= seed.n || j >= seed.m) {
    throw std::out_of_range("design cell (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside " +
                            std::to_string(seed.n) + " x " +
                            std::to_string(seed.m));
  }
}

}  // namespace

CellRow cell_row(const DesignSeed& seed, std::size_t i) {
  return CellRow{rng::mix64(seed.key() +
                            (static_cast<std::uint64_t>(i) + 1) * rng::kGolden)};
}

CellDraw cell(const DesignSeed& seed, std::size_t i, std::size_t j) {
  check_cell_index(seed, i, j);
  const std::uint64_t base = cell_base(cell_row(seed, i), j);
  const double u01 = rng::u01_open(rng::stream_word(base, 0));
  // u01 is strictly inside (0,1) and never exactly 1/2, so u stays strictly
  // inside the open interval and never hits 0.
  const double u = (u01 - 0.5) * std::numbers::pi;
  const double w = rng::exp1(rng::stream_word(base, 1));
  return CellDraw{u, w};
}

}  // namespace onescan
