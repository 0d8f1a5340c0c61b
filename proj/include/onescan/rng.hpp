// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Counter-mode pseudo-random primitives. Every value is a pure function of
// (key, position), so encoder and decoder regenerate identical draws without
// shared state and without materializing anything.

#pragma once

#include <cmath>
#include <cstdint>

namespace onescan::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's public-domain constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Decorrelates streams that share a master seed (design, flip noise, signal
// generation, ... each get their own tag).
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed + kGolden) ^ mix64(tag));
}

// SplitMix64 output at an arbitrary stream position.
constexpr std::uint64_t stream_word(std::uint64_t key, std::uint64_t pos) {
  return mix64(key + (pos + 1) * kGolden);
}

// Uniform on the open interval (0,1); never returns 0, 0.5, or 1 exactly.
inline double u01_open(std::uint64_t word) {
  return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

// Unit-rate exponential; strictly positive (u01_open never hits 0 or 1).
inline double exp1(std::uint64_t word) { return -std::log(u01_open(word)); }

// Stream tags.
inline constexpr std::uint64_t kTagDesign = 0x64657369676e0001ULL;
inline constexpr std::uint64_t kTagGaussianDesign = 0x67617573730a0002ULL;
inline constexpr std::uint64_t kTagFlip = 0x666c69700a0a0003ULL;
inline constexpr std::uint64_t kTagSignal = 0x7369676e616c0004ULL;
inline constexpr std::uint64_t kTagAdditive = 0x6164646e730a0005ULL;
inline constexpr std::uint64_t kTagEstimator = 0x6573746b0a0a0006ULL;
inline constexpr std::uint64_t kTagTrial = 0x747269616c0a0007ULL;

}  // namespace onescan::rng
