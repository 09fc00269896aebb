// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/decomposition.hpp"

#include <cmath>

#include "vde/simd/kernels.hpp"

namespace vde {
namespace {

// Removes the x component from w in place (two Gram-Schmidt passes) and
// returns the coefficient that was removed.
double orthogonalize(std::span<double> w, std::span<const double> x, double x_sq) {
  double removed = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const double c = simd::dot(w, x) / x_sq;
    simd::axpy(-c, x, w);
    removed += c;
  }
  return removed;
}

}  // namespace

std::vector<double> fallback_direction(std::span<const double> x) {
  const double x_sq = simd::sum_sq(x);
  const double x_norm = std::sqrt(x_sq);
  std::vector<double> e(x.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    // e_k is parallel to x only when x has a single nonzero entry at k.
    if (std::abs(x[k]) >= x_norm * (1.0 - 1e-12)) continue;
    std::fill(e.begin(), e.end(), 0.0);
    e[k] = 1.0;
    orthogonalize(e, x, x_sq);
    const double n = std::sqrt(simd::sum_sq(e));
    if (n > 1e-6) {
      for (double& ei : e) ei /= n;
      return e;
    }
  }
  fail(Errc::kDegenerateDirection, "no basis vector orthogonalizes against x");
}

Decomposition decompose(const Velocity& v, const Latent& x, double t,
                        std::optional<std::span<const double>> direction_hint) {
  require(v.dim() == x.dim(), Errc::kDimensionMismatch, "velocity and latent differ in size");
  require(std::isfinite(t), Errc::kNonFiniteInput, "decomposition time is not finite");
  const double x_sq = simd::sum_sq(x.values());
  const double x_norm = std::sqrt(x_sq);
  require(x_norm > kLatentNormFloor, Errc::kZeroLatentNorm, "latent norm below floor");

  Decomposition d;
  d.t = t;
  d.alpha = simd::dot(v.values(), x.values()) / x_sq;
  std::vector<double> r(v.dim());
  simd::axpby(-d.alpha, x.values(), 1.0, v.values(), r);
  // Second pass recovers orthogonality lost to cancellation when v is nearly
  // parallel to x; the removed amount belongs to alpha.
  const double c = simd::dot(r, x.values()) / x_sq;
  simd::axpy(-c, x.values(), r);
  d.alpha += c;

  const double r_norm = std::sqrt(simd::sum_sq(r));
  const double v_norm = norm(v);
  if (r_norm > kResidualFloor * v_norm && r_norm > 0.0) {
    for (double& ri : r) ri /= r_norm;
    d.u = std::move(r);
    d.beta = r_norm / x_norm;
    return d;
  }

  d.beta = 0.0;
  if (direction_hint && direction_hint->size() == x.dim()) {
    std::vector<double> u(direction_hint->begin(), direction_hint->end());
    orthogonalize(u, x.values(), x_sq);
    const double n = std::sqrt(simd::sum_sq(u));
    if (n > 1e-6) {
      for (double& ui : u) ui /= n;
      d.u = std::move(u);
      return d;
    }
  }
  d.u = fallback_direction(x.values());
  return d;
}

Velocity recompose(const Decomposition& d, const Latent& x) {
  require(d.u.size() == x.dim(), Errc::kDimensionMismatch, "direction and latent differ in size");
  const double x_norm = norm(x);
  require(x_norm > kLatentNormFloor, Errc::kZeroLatentNorm, "latent norm below floor");
  std::vector<double> out(x.dim());
  simd::axpby(d.alpha, x.values(), d.beta * x_norm, d.u, out);
  return Velocity(x.shape(), std::move(out));
}

}  // namespace vde
