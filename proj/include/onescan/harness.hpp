// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Configuration-driven Monte-Carlo experiment runner. For each grid point
// (zeta, gamma, beta) it encodes fresh random signals, decodes with the
// selected method, and reports median sign error and recall over the trials
// as CSV rows. M = ceil(zeta * K * ln(N / delta)) measurements per trial.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onescan/bounds.hpp"
#include "onescan/encoder.hpp"

namespace onescan {

enum class Method { kOneScan, kMarginal, kBiht };

std::string method_name(Method method);
Method parse_method(const std::string& name);

// exact: plug the configured k into the decoder. estimated: spend
// estimate_samples full-precision measurements (independent seed, same
// alpha) on the harmonic-mean estimate and pass it on un-rounded.
struct KMode {
  bool exact{true};
  std::size_t estimate_samples{5};
};

std::string k_mode_name(const KMode& mode);
KMode parse_k_mode(const std::string& name);

struct ExperimentConfig {
  std::size_t n{1000};
  std::size_t k{20};
  double alpha{0.05};
  double delta{0.01};
  std::vector<double> zeta_grid{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  std::vector<double> gamma_grid{0.0};
  std::vector<double> beta_grid{1.0, 1.2, 1.5, 2.0};
  std::size_t trials{1000};
  Method method{Method::kOneScan};
  KMode k_mode{};
  std::uint64_t master_seed{0};
  double signal_sigma{5.0};

  void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
  std::size_t n;
  std::size_t k;
  double zeta;
  double gamma;
  double beta;
  std::string method;
  std::string k_mode;
  double median_sign_error;
  double median_recall;
  std::size_t trials;
};

// K distinct uniform coordinates, values i.i.d. N(0, sigma^2) with exact
// zeros resampled; deterministic in (master_seed, trial_index).
SparseSignal generate_signal(const ExperimentConfig& config,
                             std::size_t trial_index);

// Runs the full grid. Trials run concurrently; a trial error aborts the run
// with context. Row order and contents are deterministic in the config.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string results_csv(const std::vector<ResultRow>& rows);

struct BoundsRow {
  double epsilon;
  double k;
  double gamma;
  std::string which;
  double t_star;
  double h_star;
  double inv_h_star;
};

std::vector<BoundsRow> run_bounds_table(const std::vector<BoundQuery>& queries,
                                        ExponentKind which);

std::string bounds_csv(const std::vector<BoundsRow>& rows);

std::string exponent_name(ExponentKind kind);
ExponentKind parse_exponent(const std::string& name);

// key=value configuration text; '#' starts a comment, lists are
// comma-separated. Unknown keys are errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

double median(std::vector<double> values);  // throws on empty input

}  // namespace onescan
