// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "vde/velocity_field.hpp"

namespace vde {

// Exact marginal velocity E[x1 - x0 | x_t = x] for x0 ~ N(0, I) and
// x1 ~ N(mu1, s1^2 I) drawn independently, x_t = t x1 + (1 - t) x0.
//
// (x_t, x1 - x0) is jointly Gaussian with per-coordinate
//   Var[x_t]           = sigma_t^2 = t^2 s1^2 + (1 - t)^2
//   Cov[x1 - x0, x_t]  = t s1^2 - (1 - t)
// so the conditional mean is affine in x:
//   v(x, t) = mu1 + k(t) (x - t mu1),   k(t) = (t s1^2 - (1 - t)) / sigma_t^2.
//
// The probability-flow ODE through x0 has the closed form
//   x(t) = t mu1 + sigma_t x0.
class GaussianAnalyticField final : public VelocityField {
 public:
  GaussianAnalyticField(std::vector<double> mu1, double s1);

  std::size_t dim() const noexcept override { return mu1_.size(); }

  const std::vector<double>& mu1() const noexcept { return mu1_; }
  double s1() const noexcept { return s1_; }

  // k(t) above. Throws kOutOfRange unless 0 <= t < 1.
  double gain(double t) const;
  // sigma_t above.
  double marginal_std(double t) const noexcept;
  // Exact ODE solution at time t (0 <= t <= 1) starting from x0 at t = 0.
  Latent exact_flow(const Latent& x0, double t) const;

 protected:
  Velocity compute(const Latent& x, double t) const override;

 private:
  std::vector<double> mu1_;
  double s1_;
};

}  // namespace vde
