// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Exact split of a velocity against the latent it was evaluated at:
//
//   v = alpha * x + beta * |x| * u,   u unit, u ⟂ x, beta >= 0
//
// alpha = <v, x> / |x|^2, r = v - alpha x, u = r / |r|, beta = |r| / |x|.

#include <optional>
#include <span>
#include <vector>

#include "vde/flow_core.hpp"

namespace vde {

// Latents with |x| at or below this are rejected (kZeroLatentNorm).
inline constexpr double kLatentNormFloor = 1e-12;
// Residuals with |r| <= kResidualFloor * |v| are treated as exactly parallel.
inline constexpr double kResidualFloor = 1e-10;

struct Decomposition {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> u;
  double t = 0.0;
};

// `direction_hint` is used only when the residual vanishes (beta = 0): it is
// projected orthogonal to x and normalized. Without a usable hint the
// direction is Gram-Schmidt of the first standard basis vector not parallel
// to x. Throws kZeroLatentNorm, kNonFiniteInput, kDimensionMismatch.
Decomposition decompose(const Velocity& v, const Latent& x, double t,
                        std::optional<std::span<const double>> direction_hint = std::nullopt);

// alpha * x + beta * |x| * u. Throws kDimensionMismatch, kZeroLatentNorm.
Velocity recompose(const Decomposition& d, const Latent& x);

// Unit vector orthogonal to x (|x| > 0 required); see decompose().
std::vector<double> fallback_direction(std::span<const double> x);

}  // namespace vde
