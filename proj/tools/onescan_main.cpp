// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: encode | decode | estimate-k | bounds |
// experiment | baseline. All outputs are plain text / CSV.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "onescan/baselines.hpp"
#include "onescan/bounds.hpp"
#include "onescan/decoder.hpp"
#include "onescan/encoder.hpp"
#include "onescan/harness.hpp"
#include "onescan/io.hpp"
#include "onescan/metrics.hpp"
#include "onescan/sparsity.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct EncodeArgs {
  std::string signal_path;
  std::size_t m{0};
  double alpha{0.05};
  std::uint64_t seed{0};
  std::string out_path;
  bool signs{false};
  double gamma{0.0};
  std::uint64_t noise_seed{0};
  double sigma{0.0};
};

int run_encode(const EncodeArgs& a) {
  const onescan::SparseSignal signal = onescan::read_signal_file(a.signal_path);
  const onescan::DesignSeed seed{a.seed, signal.n(), a.m};
  std::optional<onescan::AdditiveNoise> noise;
  if (a.sigma > 0.0) noise = onescan::AdditiveNoise{a.sigma, a.noise_seed};
  const onescan::RawMeasurements raw =
      onescan::encode(signal, seed, a.alpha, noise);
  if (!a.signs) {
    onescan::write_raw_measurements_file(a.out_path, raw);
    return 0;
  }
  onescan::SignMeasurements sm = onescan::quantize(raw);
  if (a.gamma > 0.0) {
    sm = onescan::apply_flip_noise(sm, onescan::FlipNoise{a.gamma, a.noise_seed});
  }
  onescan::write_sign_measurements_file(a.out_path, sm);
  return 0;
}

struct DecodeArgs {
  std::string measurements_path;
  std::size_t n{0};
  double k{0.0};
  double beta{1.0};
  std::string rule{"topk"};
  std::string out_path;
  std::string scores_path;
};

int run_decode(const DecodeArgs& a) {
  const onescan::SignMeasurements signs =
      onescan::read_sign_measurements_file(a.measurements_path, a.n);
  const onescan::ScoreTable scores =
      onescan::compute_scores(signs, signs.seed, a.k);
  if (!a.scores_path.empty()) {
    write_text_file(a.scores_path, onescan::score_table_csv(scores));
  }
  onescan::SignEstimate est;
  if (a.rule == "topk") {
    est = onescan::estimate_signs_topk(scores, a.k, a.beta);
  } else if (a.rule == "threshold") {
    est = onescan::estimate_signs_threshold(scores);
  } else {
    throw std::invalid_argument("rule must be topk or threshold");
  }
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i : est.support) {
    entries.emplace_back(i, static_cast<double>(est.signs[i]));
  }
  const onescan::SparseSignal recovered(a.n, std::move(entries));
  if (a.out_path.empty()) {
    onescan::write_signal(std::cout, recovered);
  } else {
    onescan::write_signal_file(a.out_path, recovered);
  }
  return 0;
}

int run_estimate_k(const std::string& path, std::size_t n, double alpha) {
  const onescan::RawMeasurements raw =
      onescan::read_raw_measurements_file(path, n);
  const onescan::KEstimate est = onescan::estimate_k(raw, alpha);
  std::cout << "k_hat=" << est.k_hat << " m_used=" << est.m_used << "\n";
  return 0;
}

struct BoundsArgs {
  std::string which{"fp"};
  std::vector<double> epsilons{0.0};
  std::vector<std::string> ks{"inf"};
  double gamma{0.0};
  std::string out_path;
};

int run_bounds(const BoundsArgs& a) {
  const onescan::ExponentKind kind = onescan::parse_exponent(a.which);
  std::vector<onescan::BoundQuery> queries;
  for (double eps : a.epsilons) {
    for (const std::string& ks : a.ks) {
      const double k = ks == "inf" ? onescan::kInfiniteSparsity : std::stod(ks);
      queries.push_back(onescan::BoundQuery{eps, k, a.gamma});
    }
  }
  const std::string csv =
      onescan::bounds_csv(onescan::run_bounds_table(queries, kind));
  if (a.out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(a.out_path, csv);
  }
  return 0;
}

struct BaselineArgs {
  std::string measurements_path;
  std::size_t n{0};
  std::size_t k{0};
  std::string method{"marginal"};
  std::uint64_t seed{0};
  std::size_t iters{100};
  double step{1.0};
  std::string out_path;
};

int run_baseline(const BaselineArgs& a) {
  const onescan::SignMeasurements signs =
      onescan::read_sign_measurements_file(a.measurements_path, a.n);
  const onescan::GaussianDesignSeed seed{a.seed, a.n, signs.m};
  onescan::SignEstimate est;
  if (a.method == "marginal") {
    est = onescan::marginal_regression_decode(signs, seed, a.k);
  } else if (a.method == "biht") {
    est = onescan::biht_decode(signs, seed, a.k,
                               onescan::BihtOptions{a.iters, a.step});
  } else {
    throw std::invalid_argument("baseline method must be marginal or biht");
  }
  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i : est.support) {
    entries.emplace_back(i, static_cast<double>(est.signs[i]));
  }
  const onescan::SparseSignal recovered(a.n, std::move(entries));
  if (a.out_path.empty()) {
    onescan::write_signal(std::cout, recovered);
  } else {
    onescan::write_signal_file(a.out_path, recovered);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-scan 1-bit compressed sensing toolkit"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "collect measurements");
  encode->add_option("--signal", enc.signal_path, "signal file")->required();
  encode->add_option("--m", enc.m, "measurement count")->required();
  encode->add_option("--alpha", enc.alpha, "stability index");
  encode->add_option("--seed", enc.seed, "design master seed");
  encode->add_option("--out", enc.out_path, "output file")->required();
  encode->add_flag("--signs", enc.signs, "store signs instead of raw values");
  encode->add_option("--gamma", enc.gamma, "sign-flip probability");
  encode->add_option("--noise-seed", enc.noise_seed, "noise seed");
  encode->add_option("--sigma", enc.sigma, "additive Gaussian noise level");

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "recover signs from a sign file");
  decode->add_option("--measurements", dec.measurements_path)->required();
  decode->add_option("--n", dec.n, "signal length")->required();
  decode->add_option("--k", dec.k, "sparsity (exact or estimated)")->required();
  decode->add_option("--beta", dec.beta, "over-selection factor");
  decode->add_option("--rule", dec.rule, "topk or threshold");
  decode->add_option("--out", dec.out_path, "recovered signal file");
  decode->add_option("--scores", dec.scores_path, "score table CSV dump");

  std::string est_path;
  std::size_t est_n = 0;
  double est_alpha = 0.05;
  auto* estk = app.add_subcommand("estimate-k", "harmonic-mean sparsity estimate");
  estk->add_option("--measurements", est_path, "raw measurement file")->required();
  estk->add_option("--n", est_n, "signal length")->required();
  estk->add_option("--alpha", est_alpha, "stability index");

  BoundsArgs bnd;
  auto* bounds = app.add_subcommand("bounds", "exponent tables as CSV");
  bounds->add_option("--which", bnd.which, "fp | fn | fnflip");
  bounds->add_option("--epsilon", bnd.epsilons, "threshold offsets");
  bounds->add_option("--k", bnd.ks, "sparsity values (numbers or 'inf')");
  bounds->add_option("--gamma", bnd.gamma, "flip probability (fnflip)");
  bounds->add_option("--out", bnd.out_path, "output CSV");

  std::string config_path;
  std::string exp_out;
  auto* experiment = app.add_subcommand("experiment", "run an experiment grid");
  experiment->add_option("--config", config_path, "key=value config file")
      ->required();
  experiment->add_option("--out", exp_out, "output CSV");

  BaselineArgs base;
  auto* baseline = app.add_subcommand("baseline", "reference 1-bit decoders");
  baseline->add_option("--measurements", base.measurements_path)->required();
  baseline->add_option("--n", base.n, "signal length")->required();
  baseline->add_option("--k", base.k, "sparsity")->required();
  baseline->add_option("--method", base.method, "marginal or biht");
  baseline->add_option("--seed", base.seed, "Gaussian design master seed");
  baseline->add_option("--iters", base.iters, "biht iterations");
  baseline->add_option("--step", base.step, "biht step size");
  baseline->add_option("--out", base.out_path, "recovered signal file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) return run_encode(enc);
    if (*decode) return run_decode(dec);
    if (*estk) return run_estimate_k(est_path, est_n, est_alpha);
    if (*bounds) return run_bounds(bnd);
    if (*experiment) {
      const onescan::ExperimentConfig config =
          onescan::load_config_file(config_path);
      const std::string csv =
          onescan::results_csv(onescan::run_experiment(config));
      if (exp_out.empty()) {
        std::cout << csv;
      } else {
        write_text_file(exp_out, csv);
      }
      return 0;
    }
    if (*baseline) return run_baseline(base);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
