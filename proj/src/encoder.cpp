// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace onescan {

SparseSignal::SparseSignal(
    std::size_t n, std::vector<std::pair<std::size_t, double>> entries)
    : n_(n), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& [idx, value] = entries_[e];
    if (idx >= n_) {
      throw std::invalid_argument("signal index " + std::to_string(idx) +
                                  " outside length " + std::to_string(n_));
    }
    if (value == 0.0 || !std::isfinite(value)) {
      throw std::invalid_argument("signal values must be finite and nonzero");
    }
    if (e > 0 && entries_[e - 1].first == idx) {
      throw std::invalid_argument("duplicate signal index " +
                                  std::to_string(idx));
    }
  }
}

std::vector<double> SparseSignal::dense() const {
  std::vector<double> x(n_, 0.0);
  for (const auto& [idx, value] : entries_) x[idx] = value;
  return x;
}

std::vector<int> SparseSignal::signs() const {
  std::vector<int> s(n_, 0);
  for (const auto& [idx, value] : entries_) s[idx] = value > 0.0 ? 1 : -1;
  return s;
}

namespace {

// Standard normal from a pair of stream words (Box-Muller). Words j and j^1
// share a pair; the pair yields two independent normals.
double normal_at(std::uint64_t key, std::size_t j) {
  const std::uint64_t pair = j >> 1;
  const std::uint64_t h = rng::mix64(key + (pair + 1) * rng::kGolden);
  const double a = rng::u01_open(rng::stream_word(h, 0));
  const double b = rng::u01_open(rng::stream_word(h, 1));
  const double r = std::sqrt(-2.0 * std::log(a));
  const double theta = 2.0 * std::numbers::pi * b;
  return (j & 1) == 0 ? r * std::cos(theta) : r * std::sin(theta);
}

}  // namespace

RawMeasurements encode(const SparseSignal& signal, const DesignSeed& seed,
                       double alpha,
                       const std::optional<AdditiveNoise>& noise) {
  validate_alpha(alpha);
  if (signal.n() != seed.n) {
    throw std::invalid_argument("signal length " + std::to_string(signal.n()) +
                                " does not match design n " +
                                std::to_string(seed.n));
  }
  RawMeasurements out;
  out.m = seed.m;
  out.seed = seed;
  out.alpha = alpha;
  out.y.assign(seed.m, 0.0);
  for (const auto& [i, value] : signal.entries()) {
    const CellRow row = cell_row(seed, i);
    for (std::size_t j = 0; j < seed.m; ++j) {
      const std::uint64_t base = cell_base(row, j);
      const double u01 = rng::u01_open(rng::stream_word(base, 0));
      const double u = (u01 - 0.5) * std::numbers::pi;
      const double w = rng::exp1(rng::stream_word(base, 1));
      out.y[j] += value * cms_transform(u, w, alpha);
    }
  }
  if (noise && noise->sigma > 0.0) {
    const std::uint64_t key =
        rng::derive_key(noise->noise_seed, rng::kTagAdditive);
    for (std::size_t j = 0; j < seed.m; ++j) {
      out.y[j] += noise->sigma * normal_at(key, j);
    }
  }
  return out;
}

void update(RawMeasurements& measurements, std::size_t i, double delta,
            double alpha) {
  validate_alpha(alpha);
  const DesignSeed& seed = measurements.seed;
  if (i >= seed.n) {
    throw std::out_of_range("update index " + std::to_string(i) +
                            " outside length " + std::to_string(seed.n));
  }
  const CellRow row = cell_row(seed, i);
  for (std::size_t j = 0; j < measurements.m; ++j) {
    const std::uint64_t base = cell_base(row, j);
    const double u01 = rng::u01_open(rng::stream_word(base, 0));
    const double u = (u01 - 0.5) * std::numbers::pi;
    const double w = rng::exp1(rng::stream_word(base, 1));
    measurements.y[j] += delta * cms_transform(u, w, alpha);
  }
}

SignMeasurements quantize(const RawMeasurements& measurements) {
  SignMeasurements out;
  out.m = measurements.m;
  out.seed = measurements.seed;
  out.alpha = measurements.alpha;
  out.flip_prob = 0.0;
  out.signs.resize(measurements.m);
  for (std::size_t j = 0; j < measurements.m; ++j) {
    const double y = measurements.y[j];
    out.signs[j] = (y > 0.0) - (y < 0.0);
  }
  return out;
}

SignMeasurements apply_flip_noise(const SignMeasurements& signs,
                                  const FlipNoise& noise) {
  if (!(noise.gamma >= 0.0) || !(noise.gamma < 1.0)) {
    throw std::invalid_argument("flip probability must lie in [0, 1)");
  }
  SignMeasurements out = signs;
  if (noise.gamma == 0.0) return out;
  const std::uint64_t key = rng::derive_key(noise.noise_seed, rng::kTagFlip);
  for (std::size_t j = 0; j < out.m; ++j) {
    if (rng::u01_open(rng::stream_word(key, j)) < noise.gamma) {
      out.signs[j] = -out.signs[j];
    }
  }
  // Composition of independent flips: p <- p(1-g) + g(1-p).
  out.flip_prob =
      signs.flip_prob * (1.0 - noise.gamma) + noise.gamma * (1.0 - signs.flip_prob);
  return out;
}

}  // namespace onescan
