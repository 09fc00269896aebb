// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/estimator.hpp"

#include <cmath>
#include <string>

#include "vde/simd/kernels.hpp"

namespace vde {

void AnchorHistory::push(std::size_t step, Decomposition d) {
  if (count_ > 0) {
    const Anchor& last = slots_[head_];
    if (step <= last.step) {
      fail(Errc::kInvalidSchedule, "anchor step " + std::to_string(step) +
                                       " does not follow step " + std::to_string(last.step));
    }
    require(d.t != last.decomposition.t, Errc::kCoincidentAnchors,
            "anchor repeats the latest anchor time");
  }
  head_ = count_ == 0 ? 0 : 1 - head_;
  slots_[head_] = Anchor{step, std::move(d)};
  if (count_ < 2) ++count_;
}

const Anchor& AnchorHistory::latest() const {
  require(count_ >= 1, Errc::kInsufficientHistory, "no anchors recorded");
  return slots_[head_];
}

const Anchor& AnchorHistory::previous() const {
  require(count_ >= 2, Errc::kInsufficientHistory, "extrapolation needs two anchors");
  return slots_[1 - head_];
}

double extrapolate_line(double t1, double c1, double t2, double c2, double t) {
  require(t1 != t2, Errc::kCoincidentAnchors, "anchors share the same time");
  return c1 + (c2 - c1) / (t2 - t1) * (t - t1);
}

Coefficients extrapolate_coefficients(const AnchorHistory& history, double t) {
  const Decomposition& older = history.previous().decomposition;
  const Decomposition& newer = history.latest().decomposition;
  return {extrapolate_line(older.t, older.alpha, newer.t, newer.alpha, t),
          extrapolate_line(older.t, older.beta, newer.t, newer.beta, t)};
}

Velocity estimate_velocity(const Latent& x, double t, const AnchorHistory& history) {
  const Coefficients c = extrapolate_coefficients(history, t);
  const std::vector<double>& u = history.latest().decomposition.u;
  require(u.size() == x.dim(), Errc::kDimensionMismatch, "anchor direction and latent differ");
  const double x_norm = norm(x);
  require(x_norm > kLatentNormFloor, Errc::kZeroLatentNorm, "latent norm below floor");
  std::vector<double> out(x.dim());
  simd::axpby(c.alpha, x.values(), c.beta * x_norm, u, out);
  return Velocity(x.shape(), std::move(out));
}

void StablePhaseConfig::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, Errc::kInvalidConfig, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, Errc::kInvalidConfig, "delta must lie in (0, 1)");
}

double coefficient_error(double estimate, double truth) noexcept {
  return std::abs(estimate - truth) / std::max(std::abs(truth), kCoefficientFloor);
}

bool is_stable_at(std::span<const Decomposition> trace, std::size_t i,
                  const StablePhaseConfig& config) {
  const Decomposition& d0 = trace[i];
  const Decomposition& d1 = trace[i + 1];
  const Decomposition& d2 = trace[i + 2];
  const double alpha_hat = extrapolate_line(d0.t, d0.alpha, d1.t, d1.alpha, d2.t);
  const double beta_hat = extrapolate_line(d0.t, d0.beta, d1.t, d1.beta, d2.t);
  const double err =
      std::max(coefficient_error(alpha_hat, d2.alpha), coefficient_error(beta_hat, d2.beta));
  return err < config.epsilon && dot(d0.u, d1.u) > config.delta;
}

std::optional<std::size_t> detect_stable_phase(std::span<const Decomposition> trace,
                                               const StablePhaseConfig& config) {
  config.validate();
  require(trace.size() >= 3, Errc::kInsufficientHistory,
          "stable-phase detection needs at least three full steps");
  for (std::size_t i = 0; i + 2 < trace.size(); ++i) {
    if (is_stable_at(trace, i, config)) return i;
  }
  return std::nullopt;
}

}  // namespace vde
