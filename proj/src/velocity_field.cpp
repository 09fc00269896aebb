// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/velocity_field.hpp"

#include <string>

namespace vde {

Velocity VelocityField::evaluate(const Latent& x, std::span<const double> /*condition*/,
                                 double t) const {
  evals_.bump();
  if (dim() != 0 && x.dim() != dim()) {
    fail(Errc::kDimensionMismatch, "field expects dimension " + std::to_string(dim()) +
                                       ", got " + std::to_string(x.dim()));
  }
  return compute(x, t);
}

ConstantField::ConstantField(std::vector<double> k) : k_(std::move(k)) {
  require(k_.size() >= 2 && all_finite(k_), Errc::kNonFiniteInput,
          "constant field needs >= 2 finite entries");
}

Velocity ConstantField::compute(const Latent& x, double /*t*/) const {
  return Velocity(x.shape(), k_);
}

}  // namespace vde
