// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Plain-text file formats.
//   signal:       "n=<N> k=<K>" header, then one "index value" pair per line
//   measurements: "m=<M> alpha=<a> seed=<s> gamma=<g>" header, then one sign
//                 (-1/0/1) or one real per line depending on mode

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "onescan/encoder.hpp"

namespace onescan {

// Shortest decimal that round-trips the exact double.
std::string format_double(double value);

void write_signal(std::ostream& out, const SparseSignal& signal);
void write_signal_file(const std::string& path, const SparseSignal& signal);
SparseSignal read_signal(std::istream& in);
SparseSignal read_signal_file(const std::string& path);

struct MeasurementHeader {
  std::size_t m{0};
  double alpha{0.0};
  std::uint64_t seed{0};
  double gamma{0.0};
};

void write_raw_measurements(std::ostream& out, const RawMeasurements& raw);
void write_sign_measurements(std::ostream& out, const SignMeasurements& signs);
void write_raw_measurements_file(const std::string& path,
                                 const RawMeasurements& raw);
void write_sign_measurements_file(const std::string& path,
                                  const SignMeasurements& signs);

// The header does not carry n; callers supply the signal length to rebuild
// the design seed.
RawMeasurements read_raw_measurements(std::istream& in, std::size_t n);
RawMeasurements read_raw_measurements_file(const std::string& path,
                                           std::size_t n);
SignMeasurements read_sign_measurements(std::istream& in, std::size_t n);
SignMeasurements read_sign_measurements_file(const std::string& path,
                                             std::size_t n);

}  // namespace onescan
