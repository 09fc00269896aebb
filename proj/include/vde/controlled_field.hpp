// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "vde/velocity_field.hpp"

namespace vde {

// Piecewise polynomial in absolute time. Piece k covers [breaks[k-1], breaks[k])
// and holds ascending-power coefficients c0 + c1 t + c2 t^2 + ...
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> pieces);

  static PiecewisePolynomial constant(double c) { return PiecewisePolynomial({}, {{c}}); }
  static PiecewisePolynomial affine(double c0, double c1) {
    return PiecewisePolynomial({}, {{c0, c1}});
  }

  double operator()(double t) const noexcept;

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<std::vector<double>>& pieces() const noexcept { return pieces_; }

 private:
  std::vector<double> breaks_;
  std::vector<std::vector<double>> pieces_;
};

// Test field that realizes the decomposition directly:
//   v(x, t) = a(t) x + b(t) |x| unit(P(w; x))
// with P(w; x) the component of w orthogonal to x. Decomposing its output
// returns (a(t), |b(t)|, ±unit(P(w; x))).
class ControlledField final : public VelocityField {
 public:
  ControlledField(PiecewisePolynomial a, PiecewisePolynomial b, std::vector<double> w);

  std::size_t dim() const noexcept override { return w_.size(); }

  const PiecewisePolynomial& a() const noexcept { return a_; }
  const PiecewisePolynomial& b() const noexcept { return b_; }
  const std::vector<double>& reference() const noexcept { return w_; }

  // unit(P(w; x)); throws kDegenerateDirection when w is parallel to x and
  // kZeroLatentNorm when x vanishes.
  std::vector<double> direction(const Latent& x) const;

 protected:
  Velocity compute(const Latent& x, double t) const override;

 private:
  PiecewisePolynomial a_;
  PiecewisePolynomial b_;
  std::vector<double> w_;
};

}  // namespace vde
