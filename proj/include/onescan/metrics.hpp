// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Recovery-quality metrics. The sign error sums |estimated - true| sign over
// the reported coordinates only, divided by k, so its maximum is 2; recall
// is the fraction of true nonzeros retrieved.

#pragma once

#include <cstddef>
#include <optional>

#include "onescan/decoder.hpp"
#include "onescan/encoder.hpp"

namespace onescan {

struct TrialResult {
  double sign_error{0.0};
  double recall{0.0};
  std::optional<double> k_hat;
};

// Sum over the first limit entries of the (rank-ordered) support of
// |estimated sign - true sign|, divided by k_norm. Shared by the strict
// metric below and the harness (which normalizes estimated-sparsity runs by
// the true k).
double sign_error_over_support(const SignEstimate& estimate,
                               const SparseSignal& truth, std::size_t limit,
                               double k_norm);

// Top-k variant: requires |support| == k, sums over exactly those k
// coordinates. Throws std::invalid_argument otherwise.
double sign_error(const SignEstimate& estimate, const SparseSignal& truth,
                  std::size_t k);

// Threshold-rule variant with a variable support: the sum ranges over all n
// coordinates, still normalized by k. Reported separately so the two error
// definitions are never mixed in one table.
double sign_error_all_coords(const SignEstimate& estimate,
                             const SparseSignal& truth, std::size_t k);

// Fraction of the k true nonzero coordinates present in estimate.support.
double recall(const SignEstimate& estimate, const SparseSignal& truth,
              std::size_t k);

}  // namespace onescan
