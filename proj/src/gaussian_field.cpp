// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/gaussian_field.hpp"

#include <cmath>

#include "vde/simd/kernels.hpp"

namespace vde {

GaussianAnalyticField::GaussianAnalyticField(std::vector<double> mu1, double s1)
    : mu1_(std::move(mu1)), s1_(s1) {
  require(mu1_.size() >= 2, Errc::kDimensionMismatch, "mean needs at least 2 entries");
  require(all_finite(mu1_), Errc::kNonFiniteInput, "mean has non-finite entries");
  require(std::isfinite(s1_) && s1_ > 0.0, Errc::kOutOfRange, "s1 must be positive");
}

double GaussianAnalyticField::marginal_std(double t) const noexcept {
  return std::sqrt(t * t * s1_ * s1_ + (1.0 - t) * (1.0 - t));
}

double GaussianAnalyticField::gain(double t) const {
  require(t >= 0.0 && t < 1.0, Errc::kOutOfRange, "gaussian field needs 0 <= t < 1");
  const double var = t * t * s1_ * s1_ + (1.0 - t) * (1.0 - t);
  return (t * s1_ * s1_ - (1.0 - t)) / var;
}

Velocity GaussianAnalyticField::compute(const Latent& x, double t) const {
  const double k = gain(t);
  // k x + (1 - k t) mu1
  std::vector<double> out(x.dim());
  simd::axpby(k, x.values(), 1.0 - k * t, mu1_, out);
  return Velocity(x.shape(), std::move(out));
}

Latent GaussianAnalyticField::exact_flow(const Latent& x0, double t) const {
  require(x0.dim() == mu1_.size(), Errc::kDimensionMismatch, "latent and mean differ in size");
  require(t >= 0.0 && t <= 1.0, Errc::kOutOfRange, "flow time outside [0, 1]");
  std::vector<double> out(x0.dim());
  simd::axpby(t, mu1_, marginal_std(t), x0.values(), out);
  return Latent(x0.shape(), std::move(out));
}

}  // namespace vde
