// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/controlled_field.hpp"

#include <algorithm>
#include <cmath>

#include "vde/decomposition.hpp"
#include "vde/simd/kernels.hpp"

namespace vde {

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks,
                                         std::vector<std::vector<double>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  require(pieces_.size() == breaks_.size() + 1, Errc::kInvalidConfig,
          "piecewise polynomial needs one more piece than breakpoints");
  require(std::is_sorted(breaks_.begin(), breaks_.end()) &&
              std::adjacent_find(breaks_.begin(), breaks_.end()) == breaks_.end(),
          Errc::kInvalidConfig, "breakpoints must be strictly increasing");
  require(all_finite(breaks_), Errc::kNonFiniteInput, "breakpoints must be finite");
  for (const auto& p : pieces_) {
    require(!p.empty(), Errc::kInvalidConfig, "polynomial piece has no coefficients");
    require(all_finite(p), Errc::kNonFiniteInput, "polynomial coefficients must be finite");
  }
}

double PiecewisePolynomial::operator()(double t) const noexcept {
  const auto k = static_cast<std::size_t>(
      std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
  const auto& c = pieces_[k];
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ControlledField::ControlledField(PiecewisePolynomial a, PiecewisePolynomial b,
                                 std::vector<double> w)
    : a_(std::move(a)), b_(std::move(b)), w_(std::move(w)) {
  require(w_.size() >= 2, Errc::kDimensionMismatch, "reference vector needs >= 2 entries");
  require(all_finite(w_), Errc::kNonFiniteInput, "reference vector must be finite");
}

std::vector<double> ControlledField::direction(const Latent& x) const {
  require(x.dim() == w_.size(), Errc::kDimensionMismatch, "latent and reference differ in size");
  const double x_sq = simd::sum_sq(x.values());
  require(std::sqrt(x_sq) > kLatentNormFloor, Errc::kZeroLatentNorm, "latent norm below floor");
  std::vector<double> p(w_);
  for (int pass = 0; pass < 2; ++pass) simd::axpy(-simd::dot(p, x.values()) / x_sq, x.values(), p);
  const double p_norm = std::sqrt(simd::sum_sq(p));
  if (!(p_norm > 1e-12 * std::sqrt(simd::sum_sq(w_)))) {
    fail(Errc::kDegenerateDirection, "reference vector is parallel to the latent");
  }
  for (double& pi : p) pi /= p_norm;
  return p;
}

Velocity ControlledField::compute(const Latent& x, double t) const {
  const std::vector<double> u = direction(x);
  std::vector<double> out(x.dim());
  simd::axpby(a_(t), x.values(), b_(t) * norm(x), u, out);
  return Velocity(x.shape(), std::move(out));
}

}  // namespace vde
