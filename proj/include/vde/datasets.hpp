// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string_view>

#include "vde/rng.hpp"

namespace vde {

enum class DatasetKind { kTwoMoons, kGaussianRing, kCheckerboard, kPointMass };

// Seeded 2-D toy distributions. Each sample consumes draws from the caller's
// Rng in the order documented per kind, so a seed fixes the corpus exactly.
//
//   two-moons:     pick moon (uniform < 0.5 -> upper), angle a ~ U[0, pi);
//                  upper (cos a, sin a), lower (1 - cos a, 0.5 - sin a);
//                  plus N(0, 0.05^2) noise per axis clamped to +-0.15
//   gaussian-ring: mode j ~ U{0..7} on the radius-2 circle at angle 2 pi j / 8,
//                  plus N(0, 0.1^2) noise per axis clamped to +-0.3
//   checkerboard:  column c ~ U{0..3}, row r ~ U{0..1}, offsets u, v ~ U[0, 1);
//                  x = -2 + c + u, y = -2 + 2 r + (c mod 2) + v
//                  (the four dark squares of each column pair in [-2, 2]^2)
//   point-mass:    always `point`, no draws
struct ToyDataset {
  DatasetKind kind = DatasetKind::kTwoMoons;
  std::array<double, 2> point{2.0, 2.0};

  std::array<double, 2> sample(Rng& rng) const;
};

// Throws kInvalidConfig.
DatasetKind parse_dataset(std::string_view name);
std::string_view dataset_name(DatasetKind kind) noexcept;

}  // namespace vde
