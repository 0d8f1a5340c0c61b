// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0

#include "onescan/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace onescan {

std::string format_double(double value) {
  char buffer[40];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Parses "key=value" and checks the key.
std::string expect_field(std::istream& in, const std::string& key) {
  std::string token;
  if (!(in >> token)) throw std::runtime_error("truncated header");
  const auto eq = token.find('=');
  if (eq == std::string::npos || token.substr(0, eq) != key) {
    throw std::runtime_error("expected header field '" + key + "', got '" +
                             token + "'");
  }
  return token.substr(eq + 1);
}

MeasurementHeader read_measurement_header(std::istream& in) {
  MeasurementHeader h;
  h.m = std::stoull(expect_field(in, "m"));
  h.alpha = std::stod(expect_field(in, "alpha"));
  h.seed = std::stoull(expect_field(in, "seed"));
  h.gamma = std::stod(expect_field(in, "gamma"));
  return h;
}

void write_measurement_header(std::ostream& out, std::size_t m, double alpha,
                              std::uint64_t seed, double gamma) {
  out << "m=" << m << " alpha=" << format_double(alpha) << " seed=" << seed
      << " gamma=" << format_double(gamma) << '\n';
}

}  // namespace

void write_signal(std::ostream& out, const SparseSignal& signal) {
  out << "n=" << signal.n() << " k=" << signal.k() << '\n';
  for (const auto& [idx, value] : signal.entries()) {
    out << idx << ' ' << format_double(value) << '\n';
  }
}

SparseSignal read_signal(std::istream& in) {
  const std::size_t n = std::stoull(expect_field(in, "n"));
  const std::size_t k = std::stoull(expect_field(in, "k"));
  std::vector<std::pair<std::size_t, double>> entries;
  entries.reserve(k);
  for (std::size_t e = 0; e < k; ++e) {
    std::size_t idx;
    double value;
    if (!(in >> idx >> value)) {
      throw std::runtime_error("truncated signal file");
    }
    entries.emplace_back(idx, value);
  }
  return SparseSignal(n, std::move(entries));
}

void write_signal_file(const std::string& path, const SparseSignal& signal) {
  auto out = open_out(path);
  write_signal(out, signal);
}

SparseSignal read_signal_file(const std::string& path) {
  auto in = open_in(path);
  return read_signal(in);
}

void write_raw_measurements(std::ostream& out, const RawMeasurements& raw) {
  write_measurement_header(out, raw.m, raw.alpha, raw.seed.master_seed, 0.0);
  for (double y : raw.y) out << format_double(y) << '\n';
}

void write_sign_measurements(std::ostream& out, const SignMeasurements& signs) {
  write_measurement_header(out, signs.m, signs.alpha, signs.seed.master_seed,
                           signs.flip_prob);
  for (int s : signs.signs) out << s << '\n';
}

RawMeasurements read_raw_measurements(std::istream& in, std::size_t n) {
  const MeasurementHeader h = read_measurement_header(in);
  RawMeasurements raw;
  raw.m = h.m;
  raw.alpha = h.alpha;
  raw.seed = DesignSeed{h.seed, n, h.m};
  raw.y.reserve(h.m);
  for (std::size_t j = 0; j < h.m; ++j) {
    double y;
    if (!(in >> y)) throw std::runtime_error("truncated measurement file");
    raw.y.push_back(y);
  }
  return raw;
}

SignMeasurements read_sign_measurements(std::istream& in, std::size_t n) {
  const MeasurementHeader h = read_measurement_header(in);
  SignMeasurements signs;
  signs.m = h.m;
  signs.alpha = h.alpha;
  signs.flip_prob = h.gamma;
  signs.seed = DesignSeed{h.seed, n, h.m};
  signs.signs.reserve(h.m);
  for (std::size_t j = 0; j < h.m; ++j) {
    int s;
    if (!(in >> s)) throw std::runtime_error("truncated measurement file");
    if (s < -1 || s > 1) throw std::runtime_error("sign outside {-1, 0, 1}");
    signs.signs.push_back(s);
  }
  return signs;
}

void write_raw_measurements_file(const std::string& path,
                                 const RawMeasurements& raw) {
  auto out = open_out(path);
  write_raw_measurements(out, raw);
}

void write_sign_measurements_file(const std::string& path,
                                  const SignMeasurements& signs) {
  auto out = open_out(path);
  write_sign_measurements(out, signs);
}

RawMeasurements read_raw_measurements_file(const std::string& path,
                                           std::size_t n) {
  auto in = open_in(path);
  return read_raw_measurements(in, n);
}

SignMeasurements read_sign_measurements_file(const std::string& path,
                                             std::size_t n) {
  auto in = open_in(path);
  return read_sign_measurements(in, n);
}

}  // namespace onescan
