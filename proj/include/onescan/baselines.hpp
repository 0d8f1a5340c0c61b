// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Reference 1-bit decoders on Gaussian designs: marginal regression and
// binary iterative hard thresholding. Both consume sign measurements and
// report a top-k support with signs, like the one-scan decoder.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "onescan/decoder.hpp"
#include "onescan/encoder.hpp"
#include "onescan/rng.hpp"

namespace onescan {

// Deterministic standard-normal design; cell (i, j) is a pure function of
// (master_seed, i, j).
struct GaussianDesignSeed {
  std::uint64_t master_seed{0};
  std::size_t n{0};
  std::size_t m{0};

  std::uint64_t key() const {
    return rng::derive_key(master_seed, rng::kTagGaussianDesign);
  }
};

double gaussian_cell(const GaussianDesignSeed& seed, std::size_t i,
                     std::size_t j);

// y_j = sum_i x_i g_ij against the Gaussian design.
std::vector<double> encode_gaussian(const SparseSignal& signal,
                                    const GaussianDesignSeed& seed);

struct BihtOptions {
  std::size_t iters{100};
  double step{1.0};
};

// xhat_i = (1/M) sum_j sgn(y_j) g_ij; support is the top-k by |xhat|, ties
// by lower index, sign sgn(xhat_i) with sgn(0) counted as +1. One pass over
// the measurements per coordinate.
SignEstimate marginal_regression_decode(const SignMeasurements& signs,
                                        const GaussianDesignSeed& seed,
                                        std::size_t k);

// Iterates x <- H_k(x + (step/M) G (sgn(y) - sgn(G^T x))) from x = 0 with
// unit-norm renormalization each iteration, then reports the top-k support
// and signs of the final iterate. Throws std::invalid_argument for iters = 0
// and std::runtime_error if the iterate stops being finite.
SignEstimate biht_decode(const SignMeasurements& signs,
                         const GaussianDesignSeed& seed, std::size_t k,
                         const BihtOptions& options = {});

namespace detail {
// Scores shared by the decode entry points; exposed so tests can drive them
// with an instrumented cell source.
template <typename CellFn>
std::vector<double> marginal_scores(const std::vector<int>& signs,
                                    std::size_t n, std::size_t m,
                                    CellFn&& cell_at) {
  std::vector<double> xhat(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (signs[j] == 0) continue;
      acc += signs[j] * cell_at(i, j);
    }
    xhat[i] = acc / static_cast<double>(m);
  }
  return xhat;
}

// Top-k of |values| with lower-index tie break; signs from sgn(value) with
// zero counted as +1.
SignEstimate select_top_by_magnitude(const std::vector<double>& values,
                                     std::size_t k);
}  // namespace detail

}  // namespace onescan
