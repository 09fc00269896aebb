// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vde/error.hpp"

namespace vde {
namespace {

double clamped_noise(Rng& rng, double sd, double limit) {
  return std::clamp(sd * rng.normal(), -limit, limit);
}

}  // namespace

std::array<double, 2> ToyDataset::sample(Rng& rng) const {
  switch (kind) {
    case DatasetKind::kTwoMoons: {
      const bool upper = rng.uniform() < 0.5;
      const double a = std::numbers::pi * rng.uniform();
      double x = upper ? std::cos(a) : 1.0 - std::cos(a);
      double y = upper ? std::sin(a) : 0.5 - std::sin(a);
      x += clamped_noise(rng, 0.05, 0.15);
      y += clamped_noise(rng, 0.05, 0.15);
      return {x, y};
    }
    case DatasetKind::kGaussianRing: {
      const auto j = static_cast<double>(rng.below(8));
      const double angle = 2.0 * std::numbers::pi * j / 8.0;
      const double x = 2.0 * std::cos(angle) + clamped_noise(rng, 0.1, 0.3);
      const double y = 2.0 * std::sin(angle) + clamped_noise(rng, 0.1, 0.3);
      return {x, y};
    }
    case DatasetKind::kCheckerboard: {
      const auto c = rng.below(4);
      const auto r = rng.below(2);
      const double u = rng.uniform();
      const double v = rng.uniform();
      return {-2.0 + static_cast<double>(c) + u,
              -2.0 + 2.0 * static_cast<double>(r) + static_cast<double>(c % 2) + v};
    }
    case DatasetKind::kPointMass:
      return point;
  }
  return point;
}

DatasetKind parse_dataset(std::string_view name) {
  if (name == "two-moons") return DatasetKind::kTwoMoons;
  if (name == "gaussian-ring") return DatasetKind::kGaussianRing;
  if (name == "checkerboard") return DatasetKind::kCheckerboard;
  if (name == "point-mass") return DatasetKind::kPointMass;
  fail(Errc::kInvalidConfig, "unknown dataset '" + std::string(name) + "'");
}

std::string_view dataset_name(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::kTwoMoons: return "two-moons";
    case DatasetKind::kGaussianRing: return "gaussian-ring";
    case DatasetKind::kCheckerboard: return "checkerboard";
    case DatasetKind::kPointMass: return "point-mass";
  }
  return "two-moons";
}

}  // namespace vde
