// Copyright (c) 2026 onescan contributors
// SPDX-License-Identifier: Apache-2.0
//
// Symmetric alpha-stable variate generation via the Chambers-Mallows-Stuck
// transform, plus the matrix-free design-cell generator: any (u_ij, w_ij)
// pair of the N x M design is regenerated on demand from a 64-bit seed.

#pragma once

#include <cstddef>
#include <cstdint>

#include "onescan/rng.hpp"

namespace onescan {

// Stability index, valid on (0, 2]. alpha = 2 is Gaussian, 1 is Cauchy.
struct StableParams {
  double alpha;
};

// Throws std::invalid_argument unless 0 < alpha <= 2.
void validate_alpha(double alpha);

// One design-matrix cell before the CMS transform:
// u uniform on the open interval (-pi/2, pi/2), w unit-rate exponential.
struct CellDraw {
  double u;
  double w;
};

// Deterministic generator state for an n x m design. Cell (i, j) is a pure
// function of (master_seed, i, j); n and m only bound the valid index range,
// so designs with the same seed agree on their common prefix.
struct DesignSeed {
  std::uint64_t master_seed{0};
  std::size_t n{0};
  std::size_t m{0};

  std::uint64_t key() const {
    return rng::derive_key(master_seed, rng::kTagDesign);
  }
};

// CMS transform g(u, w; alpha): maps a uniform and an exponential draw to an
// S(alpha, 1) variate. sign(result) == sign(u).
// Throws std::domain_error at the cos(u) = 0 or w = 0 boundary.
double cms_transform(double u, double w, double alpha);

// Regenerates cell (i, j). Throws std::out_of_range on bad indices.
CellDraw cell(const DesignSeed& seed, std::size_t i, std::size_t j);

// Decode-side fast path: per-coordinate row handle, then sign(u_ij) and w_ij
// straight from the counter stream (sign(u) is one bit of the u word).
struct CellRow {
  std::uint64_t row_key;
};

CellRow cell_row(const DesignSeed& seed, std::size_t i);

inline std::uint64_t cell_base(CellRow row, std::size_t j) {
  return rng::mix64(row.row_key + (static_cast<std::uint64_t>(j) + 1) * rng::kGolden);
}

inline int row_sign_u(std::uint64_t base) {
  return (rng::stream_word(base, 0) >> 63) ? 1 : -1;
}

inline double row_w(std::uint64_t base) {
  return rng::exp1(rng::stream_word(base, 1));
}

}  // namespace onescan
