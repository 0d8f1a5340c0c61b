// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Measurement collection: y_j = sum_i x_i s_ij against the stable design,
// streaming turnstile updates, 1-bit quantization, and sign-flip noise.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "onescan/stable.hpp"

namespace onescan {

// Length-n vector with k nonzero entries, stored sparse and index-sorted.
class SparseSignal {
 public:
  SparseSignal() = default;

  // Validates: indices distinct and < n, values nonzero. Entries are kept
  // sorted by index. Throws std::invalid_argument on violations.
  SparseSignal(std::size_t n,
               std::vector<std::pair<std::size_t, double>> entries);

  std::size_t n() const { return n_; }
  std::size_t k() const { return entries_.size(); }
  const std::vector<std::pair<std::size_t, double>>& entries() const {
    return entries_;
  }

  std::vector<double> dense() const;
  // Per-coordinate sign in {-1, 0, +1}.
  std::vector<int> signs() const;

 private:
  std::size_t n_{0};
  std::vector<std::pair<std::size_t, double>> entries_;
};

// Optional additive measurement noise y_j += n_j with n_j ~ N(0, sigma^2).
// Off by default; kept as plumbing for noisy-measurement studies.
struct AdditiveNoise {
  double sigma{0.0};
  std::uint64_t noise_seed{0};
};

struct RawMeasurements {
  std::size_t m{0};
  std::vector<double> y;
  DesignSeed seed;
  double alpha{0.0};
};

// Independent sign flips: each sign is negated with probability gamma.
struct FlipNoise {
  double gamma{0.0};
  std::uint64_t noise_seed{0};
};

struct SignMeasurements {
  std::size_t m{0};
  std::vector<int> signs;  // each in {-1, 0, +1}
  DesignSeed seed;
  double alpha{0.0};
  double flip_prob{0.0};  // gamma applied so far (0 if clean)
};

// Collects y_j = sum over stored entries of x_i * g(u_ij, w_ij; alpha).
// Cost O(K * M). Throws std::invalid_argument on signal/seed dimension
// mismatch or invalid alpha.
RawMeasurements encode(const SparseSignal& signal, const DesignSeed& seed,
                       double alpha,
                       const std::optional<AdditiveNoise>& noise = std::nullopt);

// Turnstile update: y_j += delta * s_ij for every j. encode(x) followed by
// update(i, delta) equals encode(x + delta * e_i) up to accumulation order.
void update(RawMeasurements& measurements, std::size_t i, double delta,
            double alpha);

// signs_j = sgn(y_j), with sgn(0) = 0.
SignMeasurements quantize(const RawMeasurements& measurements);

// Negates each sign independently with probability noise.gamma, determined
// by noise.noise_seed. flip_prob on the result records the combined flip
// probability of all applications.
SignMeasurements apply_flip_noise(const SignMeasurements& signs,
                                  const FlipNoise& noise);

}  // namespace onescan
