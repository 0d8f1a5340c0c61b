// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onescan {

double sign_error_over_support(const SignEstimate& estimate,
                               const SparseSignal& truth, std::size_t limit,
                               double k_norm) {
  if (estimate.n != truth.n()) {
    throw std::invalid_argument("estimate/truth length mismatch");
  }
  const std::vector<int> true_signs = truth.signs();
  const std::size_t count = std::min(limit, estimate.support.size());
  double total = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t i = estimate.support[c];
    total += std::abs(estimate.signs[i] - true_signs[i]);
  }
  return total / k_norm;
}

double sign_error(const SignEstimate& estimate, const SparseSignal& truth,
                  std::size_t k) {
  if (estimate.support.size() != k) {
    throw std::invalid_argument("top-k sign error needs |support| == k");
  }
  return sign_error_over_support(estimate, truth, k,
                                 static_cast<double>(k));
}

double sign_error_all_coords(const SignEstimate& estimate,
                             const SparseSignal& truth, std::size_t k) {
  if (estimate.n != truth.n()) {
    throw std::invalid_argument("estimate/truth length mismatch");
  }
  const std::vector<int> true_signs = truth.signs();
  double total = 0.0;
  for (std::size_t i = 0; i < estimate.n; ++i) {
    total += std::abs(estimate.signs[i] - true_signs[i]);
  }
  return total / static_cast<double>(k);
}

double recall(const SignEstimate& estimate, const SparseSignal& truth,
              std::size_t k) {
  if (estimate.n != truth.n()) {
    throw std::invalid_argument("estimate/truth length mismatch");
  }
  std::vector<char> in_support(estimate.n, 0);
  for (std::size_t i : estimate.support) in_support[i] = 1;
  std::size_t retrieved = 0;
  for (const auto& [idx, value] : truth.entries()) {
    retrieved += in_support[idx];
  }
  return static_cast<double>(retrieved) / static_cast<double>(k);
}

}  // namespace onescan
