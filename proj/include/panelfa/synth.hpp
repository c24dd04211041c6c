#pragma once

#include <cstddef>
#include <cstdint>

#include "panelfa/matrix.hpp"
#include "panelfa/panel.hpp"

namespace panelfa {

// Synthetic factor panel: X = loadings * factors + noise_sd * E with all
// entries standard normal. Determinism contract: mt19937_64 seeded with
// `seed`, normals via Box-Muller on 53-bit uniforms, drawn row-major as
// loadings, then factors, then noise. Identical seeds give identical panels.
struct SynthSpec {
  std::size_t q = 80;
  std::size_t T = 184;
  std::size_t r = 4;
  double noise_sd = 1.0;
  std::uint64_t seed = 0;
};

struct SynthPanel {
  Panel panel;      // tcode-1 series S0001.., dates from 2000-01
  Matrix loadings;  // q x r ground truth
  Matrix factors;   // r x T ground truth
};

SynthPanel generate(const SynthSpec& spec);

// Subtracts each row's mean. Factor estimates come from a centered panel,
// so recovery against planted factors is judged on their centered version.
Matrix center_rows(const Matrix& f);

// Mean squared canonical correlation between the row spaces of two r x T
// factor blocks: trace((AA')^{-1} AB' (BB')^{-1} BA') / r. Equals 1 when
// the spaces coincide and 0 when they are orthogonal; invariant under
// invertible mixing of either block. Throws on shape mismatch or a
// rank-deficient block.
double subspace_fit(const Matrix& a, const Matrix& b);

}  // namespace panelfa
