// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "onescan/baselines.hpp"
#include "onescan/decoder.hpp"
#include "onescan/io.hpp"
#include "onescan/metrics.hpp"
#include "onescan/parallel.hpp"
#include "onescan/sparsity.hpp"

namespace onescan {

std::string method_name(Method method) {
  switch (method) {
    case Method::kOneScan: return "onescan";
    case Method::kMarginal: return "marginal";
    case Method::kBiht: return "biht";
  }
  throw std::logic_error("unreachable");
}

Method parse_method(const std::string& name) {
  if (name == "onescan") return Method::kOneScan;
  if (name == "marginal") return Method::kMarginal;
  if (name == "biht") return Method::kBiht;
  throw std::invalid_argument("unknown method '" + name +
                              "' (want onescan|marginal|biht)");
}

std::string k_mode_name(const KMode& mode) {
  if (mode.exact) return "exact";
  return "estimated:" + std::to_string(mode.estimate_samples);
}

KMode parse_k_mode(const std::string& name) {
  if (name == "exact") return KMode{true, 5};
  const std::string prefix = "estimated:";
  if (name.rfind(prefix, 0) == 0) {
    const std::size_t m = std::stoull(name.substr(prefix.size()));
    if (m < 2) throw std::invalid_argument("estimated k needs >= 2 samples");
    return KMode{false, m};
  }
  throw std::invalid_argument("unknown k_mode '" + name +
                              "' (want exact|estimated:<m>)");
}

std::string exponent_name(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::kFalsePositive: return "fp";
    case ExponentKind::kFalseNegative: return "fn";
    case ExponentKind::kFlipFalseNegative: return "fnflip";
  }
  throw std::logic_error("unreachable");
}

ExponentKind parse_exponent(const std::string& name) {
  if (name == "fp") return ExponentKind::kFalsePositive;
  if (name == "fn") return ExponentKind::kFalseNegative;
  if (name == "fnflip") return ExponentKind::kFlipFalseNegative;
  throw std::invalid_argument("unknown exponent '" + name +
                              "' (want fp|fn|fnflip)");
}

void ExperimentConfig::validate() const {
  if (n == 0 || k == 0 || n <= k) {
    throw std::invalid_argument("need n > k >= 1");
  }
  if (trials == 0) throw std::invalid_argument("need trials >= 1");
  if (zeta_grid.empty() || gamma_grid.empty() || beta_grid.empty()) {
    throw std::invalid_argument("grids must be non-empty");
  }
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("alpha outside (0, 2]");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta outside (0, 1)");
  }
  if (!(signal_sigma > 0.0)) {
    throw std::invalid_argument("signal_sigma must be positive");
  }
  for (double g : gamma_grid) {
    if (!(g >= 0.0) || !(g < 1.0)) {
      throw std::invalid_argument("gamma outside [0, 1)");
    }
  }
  for (double b : beta_grid) {
    if (!(b >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  }
  for (double z : zeta_grid) {
    if (!(z > 0.0)) throw std::invalid_argument("zeta must be positive");
  }
}

SparseSignal generate_signal(const ExperimentConfig& config,
                             std::size_t trial_index) {
  const std::uint64_t key =
      rng::derive_key(config.master_seed, rng::kTagSignal);
  std::mt19937_64 engine(rng::stream_word(key, trial_index));
  std::uniform_int_distribution<std::size_t> coord(0, config.n - 1);
  std::unordered_set<std::size_t> chosen;
  while (chosen.size() < config.k) chosen.insert(coord(engine));
  std::vector<std::size_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());
  std::normal_distribution<double> value(0.0, config.signal_sigma);
  std::vector<std::pair<std::size_t, double>> entries;
  entries.reserve(config.k);
  for (std::size_t idx : indices) {
    double v = value(engine);
    while (v == 0.0) v = value(engine);
    entries.emplace_back(idx, v);
  }
  return SparseSignal(config.n, std::move(entries));
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

struct TrialOutcome {
  std::vector<double> sign_error;  // per beta
  std::vector<double> recall;      // per beta
};

// One independent trial of one (zeta, gamma) grid point. The design, flip
// and estimator streams are keyed by trial only, so larger-M runs extend
// smaller ones measurement-by-measurement.
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t m,
                       double gamma, std::size_t trial) {
  const SparseSignal signal = generate_signal(config, trial);
  const std::uint64_t trial_seed =
      rng::stream_word(rng::derive_key(config.master_seed, rng::kTagTrial),
                       trial);
  const DesignSeed design{trial_seed, config.n, m};

  SignMeasurements signs;
  if (config.method == Method::kOneScan) {
    signs = quantize(encode(signal, design, config.alpha));
  } else {
    const GaussianDesignSeed gauss{trial_seed, config.n, m};
    const std::vector<double> y = encode_gaussian(signal, gauss);
    signs.m = m;
    signs.seed = design;
    signs.alpha = config.alpha;
    signs.signs.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      signs.signs[j] = (y[j] > 0.0) - (y[j] < 0.0);
    }
  }
  if (gamma > 0.0) {
    signs = apply_flip_noise(signs, FlipNoise{gamma, trial_seed});
  }

  double k_used = static_cast<double>(config.k);
  if (!config.k_mode.exact) {
    const DesignSeed est_seed{rng::derive_key(trial_seed, rng::kTagEstimator),
                              config.n, config.k_mode.estimate_samples};
    const RawMeasurements batch = encode(signal, est_seed, config.alpha);
    k_used = estimate_k(batch, config.alpha).k_hat;
  }

  TrialOutcome out;
  out.sign_error.reserve(config.beta_grid.size());
  out.recall.reserve(config.beta_grid.size());

  ScoreTable scores;
  if (config.method == Method::kOneScan) {
    scores = compute_scores(signs, design, k_used);
  }
  const auto prefix = static_cast<std::size_t>(std::floor(k_used));

  for (double beta : config.beta_grid) {
    SignEstimate est;
    switch (config.method) {
      case Method::kOneScan:
        est = estimate_signs_topk(scores, k_used, beta);
        break;
      case Method::kMarginal: {
        const GaussianDesignSeed gauss{trial_seed, config.n, m};
        const auto size =
            static_cast<std::size_t>(std::floor(beta * k_used));
        est = marginal_regression_decode(signs, gauss, size);
        break;
      }
      case Method::kBiht: {
        const GaussianDesignSeed gauss{trial_seed, config.n, m};
        const auto size =
            static_cast<std::size_t>(std::floor(beta * k_used));
        est = biht_decode(signs, gauss, size);
        break;
      }
    }
    // Sign error over the method's best-K prefix, normalized by the true K;
    // recall over the full floor(beta * K) support.
    out.sign_error.push_back(sign_error_over_support(
        est, signal, prefix, static_cast<double>(config.k)));
    out.recall.push_back(recall(est, signal, config.k));
  }
  return out;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<ResultRow> rows;
  const double ln_nd = std::log(static_cast<double>(config.n) / config.delta);
  for (double zeta : config.zeta_grid) {
    const auto m = static_cast<std::size_t>(
        std::ceil(zeta * static_cast<double>(config.k) * ln_nd));
    for (double gamma : config.gamma_grid) {
      std::vector<TrialOutcome> outcomes(config.trials);
      parallel_for(config.trials, [&](std::size_t trial) {
        try {
          outcomes[trial] = run_trial(config, m, gamma, trial);
        } catch (const std::exception& e) {
          throw std::runtime_error(
              "trial " + std::to_string(trial) + " at zeta=" +
              std::to_string(zeta) + " gamma=" + std::to_string(gamma) +
              " failed: " + e.what());
        }
      });
      for (std::size_t b = 0; b < config.beta_grid.size(); ++b) {
        std::vector<double> errs(config.trials);
        std::vector<double> recs(config.trials);
        for (std::size_t t = 0; t < config.trials; ++t) {
          errs[t] = outcomes[t].sign_error[b];
          recs[t] = outcomes[t].recall[b];
        }
        rows.push_back(ResultRow{config.n, config.k, zeta, gamma,
                                 config.beta_grid[b], method_name(config.method),
                                 k_mode_name(config.k_mode), median(errs),
                                 median(recs), config.trials});
      }
    }
  }
  return rows;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "n,k,zeta,gamma,beta,method,k_mode,median_sign_error,median_recall,"
         "trials\n";
  for (const ResultRow& r : rows) {
    out << r.n << ',' << r.k << ',' << format_double(r.zeta) << ','
        << format_double(r.gamma) << ',' << format_double(r.beta) << ','
        << r.method << ',' << r.k_mode << ','
        << format_double(r.median_sign_error) << ','
        << format_double(r.median_recall) << ',' << r.trials << '\n';
  }
  return out.str();
}

std::vector<BoundsRow> run_bounds_table(const std::vector<BoundQuery>& queries,
                                        ExponentKind which) {
  std::vector<BoundsRow> rows;
  rows.reserve(queries.size());
  for (const BoundQuery& q : queries) {
    const BoundResult r = optimize_exponent(which, q);
    rows.push_back(BoundsRow{q.epsilon, q.k, q.gamma, exponent_name(which),
                             r.t_star, r.h_star,
                             r.h_star > 0.0
                                 ? 1.0 / r.h_star
                                 : std::numeric_limits<double>::infinity()});
  }
  return rows;
}

std::string bounds_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << "epsilon,K,gamma,which,t_star,h_star,inv_h_star\n";
  for (const BoundsRow& r : rows) {
    out << format_double(r.epsilon) << ',';
    if (std::isinf(r.k)) {
      out << "inf";
    } else {
      out << format_double(r.k);
    }
    out << ',' << format_double(r.gamma) << ',' << r.which << ','
        << format_double(r.t_star) << ',' << format_double(r.h_star) << ','
        << format_double(r.inv_h_star) << '\n';
  }
  return out.str();
}

namespace {

std::vector<double> parse_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list value");
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line without '=': " + line);
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "n") {
      config.n = std::stoull(value);
    } else if (key == "k") {
      config.k = std::stoull(value);
    } else if (key == "alpha") {
      config.alpha = std::stod(value);
    } else if (key == "delta") {
      config.delta = std::stod(value);
    } else if (key == "zeta") {
      config.zeta_grid = parse_list(value);
    } else if (key == "gamma") {
      config.gamma_grid = parse_list(value);
    } else if (key == "beta") {
      config.beta_grid = parse_list(value);
    } else if (key == "trials") {
      config.trials = std::stoull(value);
    } else if (key == "method") {
      config.method = parse_method(value);
    } else if (key == "k_mode") {
      config.k_mode = parse_k_mode(value);
    } else if (key == "seed") {
      config.master_seed = std::stoull(value);
    } else if (key == "sigma") {
      config.signal_sigma = std::stod(value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace onescan
