// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Anchor-and-estimate machinery. Full steps push their decomposition into an
// AnchorHistory; an estimated step at time t then uses
//
//   alpha_hat, beta_hat : the line through the two most recent anchors, evaluated at t
//   u_hat               : the direction of the most recent anchor (by step order)
//   v_hat               = alpha_hat x + beta_hat |x| u_hat   with x the CURRENT latent.

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "vde/decomposition.hpp"

namespace vde {

struct Anchor {
  std::size_t step = 0;
  Decomposition decomposition;
};

// The two most recent full-pass decompositions, ordered by step index.
class AnchorHistory {
 public:
  // Step indices must increase; throws kInvalidSchedule otherwise and
  // kCoincidentAnchors if t repeats the latest anchor's time.
  void push(std::size_t step, Decomposition d);
  void clear() noexcept { count_ = 0; }

  std::size_t size() const noexcept { return count_; }
  // Throws kInsufficientHistory when empty.
  const Anchor& latest() const;
  // Throws kInsufficientHistory with fewer than two anchors.
  const Anchor& previous() const;

 private:
  std::array<Anchor, 2> slots_{};
  std::size_t head_ = 0;  // slot of the latest anchor
  std::size_t count_ = 0;
};

struct Coefficients {
  double alpha = 0.0;
  double beta = 0.0;
};

// Line through (t1, c1) and (t2, c2) evaluated at t: c1 + (c2 - c1) / (t2 - t1) * (t - t1).
// Throws kCoincidentAnchors when t1 == t2.
double extrapolate_line(double t1, double c1, double t2, double c2, double t);

// Throws kInsufficientHistory, kCoincidentAnchors.
Coefficients extrapolate_coefficients(const AnchorHistory& history, double t);

// Throws as extrapolate_coefficients, plus kDimensionMismatch and kZeroLatentNorm.
Velocity estimate_velocity(const Latent& x, double t, const AnchorHistory& history);

struct StablePhaseConfig {
  double epsilon = 0.02;
  double delta = 0.99;

  // Throws kInvalidConfig unless both lie in (0, 1).
  void validate() const;
};

// Coefficients this small switch the stability test from relative to absolute
// error: the denominator is floored at this value.
inline constexpr double kCoefficientFloor = 1e-9;

// |estimate - truth| / max(|truth|, kCoefficientFloor)
double coefficient_error(double estimate, double truth) noexcept;

// True when the line through steps i and i+1 predicts alpha and beta at i+2
// with coefficient_error < epsilon and u_i . u_{i+1} > delta.
bool is_stable_at(std::span<const Decomposition> trace, std::size_t i,
                  const StablePhaseConfig& config);

// Smallest i at which is_stable_at holds over consecutive full-step
// decompositions, or nullopt. Throws kInsufficientHistory for fewer than three entries.
std::optional<std::size_t> detect_stable_phase(std::span<const Decomposition> trace,
                                               const StablePhaseConfig& config = {});

}  // namespace vde
