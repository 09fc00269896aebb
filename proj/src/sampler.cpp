// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/sampler.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "vde/io.hpp"
#include "vde/simd/kernels.hpp"

namespace vde {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Trajectory {
 public:
  Trajectory(const VelocityField& field, const Latent& x0, const TimeGrid& grid,
             std::span<const double> condition, std::size_t calls_per_step)
      : field_(field),
        grid_(grid),
        condition_(condition),
        calls_(calls_per_step),
        x_(x0),
        state_(x0.values().begin(), x0.values().end()) {
    require(calls_ >= 1, Errc::kInvalidSchedule, "calls per step must be >= 1");
    trace_.rows.reserve(grid.size());
  }

  // Runs step i in the given mode and advances the state. Returns the
  // decomposition on Full steps (null when the latent sits at the origin).
  const Decomposition* step(std::size_t i, StepMode mode) {
    const double t = grid_[i];
    TraceRow row;
    row.step = i;
    row.t = t;
    row.mode = mode;
    row.x_norm = norm(x_);

    std::optional<Velocity> v;
    const std::vector<double>* u = nullptr;
    if (mode == StepMode::kFull) {
      try {
        for (std::size_t c = 0; c < calls_; ++c) {
          Velocity out = field_.evaluate(x_, condition_, t);
          if (c == 0) v.emplace(std::move(out));
        }
      } catch (const Error& e) {
        if (e.code() != Errc::kNonFiniteInput) throw;
        throw NonFiniteStateError(i, "field returned non-finite velocity");
      }
      nfe_ += calls_;
      if (row.x_norm > kLatentNormFloor) {
        std::optional<std::span<const double>> hint;
        if (history_.size() > 0) hint = std::span<const double>(history_.latest().decomposition.u);
        Decomposition d = decompose(*v, x_, t, hint);
        row.alpha = d.alpha;
        row.beta = d.beta;
        history_.push(i, std::move(d));
        u = &history_.latest().decomposition.u;
      } else {
        // No decomposition exists at the origin; the step still integrates
        // but leaves the anchors untouched.
        row.alpha = kNaN;
        row.beta = kNaN;
      }
    } else {
      const Coefficients c = extrapolate_coefficients(history_, t);
      v.emplace(estimate_velocity(x_, t, history_));
      row.alpha = c.alpha;
      row.beta = c.beta;
      u = &history_.latest().decomposition.u;
    }
    row.v_norm = norm(*v);
    row.u_cos = prev_u_.empty() || u == nullptr ? kNaN : simd::dot(prev_u_, *u);
    if (u != nullptr) prev_u_ = *u;
    row.nfe = nfe_;
    trace_.rows.push_back(row);

    simd::axpy(grid_.dt(i), v->values(), state_);
    if (!all_finite(state_)) throw NonFiniteStateError(i, "state became non-finite");
    x_ = Latent(x_.shape(), state_);
    return mode == StepMode::kFull && u != nullptr ? &history_.latest().decomposition : nullptr;
  }

  SampleResult finish(double wall_seconds) && {
    trace_.wall_seconds = wall_seconds;
    return SampleResult{std::move(x_), std::move(trace_), nfe_};
  }

 private:
  const VelocityField& field_;
  const TimeGrid& grid_;
  std::span<const double> condition_;
  std::size_t calls_;
  Latent x_;
  std::vector<double> state_;
  AnchorHistory history_;
  std::vector<double> prev_u_;
  TrajectoryTrace trace_;
  std::uint64_t nfe_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SampleResult sample_full(const VelocityField& field, const Latent& x0, const TimeGrid& grid,
                         const SamplerOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Trajectory traj(field, x0, grid, options.condition, options.calls_per_step);
  for (std::size_t i = 0; i < grid.size(); ++i) traj.step(i, StepMode::kFull);
  return std::move(traj).finish(seconds_since(start));
}

SampleResult sample_vde(const VelocityField& field, const Latent& x0, const TimeGrid& grid,
                        const SamplingSchedule& schedule, VdeMode mode,
                        const StablePhaseConfig& stable, std::span<const double> condition) {
  if (schedule.steps() != grid.size()) {
    fail(Errc::kInvalidSchedule, "schedule has " + std::to_string(schedule.steps()) +
                                     " steps but the grid has " + std::to_string(grid.size()));
  }
  require(schedule.warmup() >= 2, Errc::kInsufficientHistory, "warm-up must seed two anchors");
  const auto start = std::chrono::steady_clock::now();
  Trajectory traj(field, x0, grid, condition, schedule.calls_per_step());

  if (mode == VdeMode::kFixedWarmup) {
    for (std::size_t i = 0; i < grid.size(); ++i) traj.step(i, schedule[i]);
    return std::move(traj).finish(seconds_since(start));
  }

  stable.validate();
  const std::size_t steps = grid.size();
  std::vector<Decomposition> seen;
  std::size_t i = 0;
  std::optional<SamplingSchedule> plan;
  while (i < steps && !plan) {
    const Decomposition* d = traj.step(i, StepMode::kFull);
    if (d == nullptr) {
      seen.clear();
    } else {
      seen.push_back(*d);
    }
    if (seen.size() >= 3 && is_stable_at(seen, seen.size() - 3, stable) && i + 2 <= steps) {
      plan = plan_schedule(steps, i + 1, schedule.interval(), schedule.calls_per_step());
    }
    ++i;
  }
  for (; i < steps; ++i) traj.step(i, (*plan)[i]);
  return std::move(traj).finish(seconds_since(start));
}

DynamicsSummary ComponentDynamics::summarize(std::size_t skip) const {
  DynamicsSummary s;
  double a = 0.0, b = 0.0, cos_sum = 0.0;
  std::size_t n_coef = 0, n_cos = 0;
  for (const StepDynamics& d : steps) {
    // Steps at the origin carry no decomposition and are left out.
    if (d.step >= 2 && d.step - 2 >= skip && std::isfinite(d.alpha_error) &&
        std::isfinite(d.beta_error)) {
      a += d.alpha_error;
      b += d.beta_error;
      ++n_coef;
    }
    if (d.step >= 1 && d.step - 1 >= skip && std::isfinite(d.u_cos)) {
      cos_sum += d.u_cos;
      ++n_cos;
    }
  }
  s.samples = n_coef;
  s.alpha_error_pct = n_coef ? 100.0 * a / static_cast<double>(n_coef) : kNaN;
  s.beta_error_pct = n_coef ? 100.0 * b / static_cast<double>(n_coef) : kNaN;
  s.mean_u_cos = n_cos ? cos_sum / static_cast<double>(n_cos) : kNaN;
  s.direction_error_pct = 100.0 * (1.0 - s.mean_u_cos);
  return s;
}

ComponentDynamics record_component_dynamics(const VelocityField& field, const Latent& x0,
                                            const TimeGrid& grid) {
  ComponentDynamics out;
  out.trace = sample_full(field, x0, grid).trace;
  const auto& rows = out.trace.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    StepDynamics d;
    d.step = i;
    d.t = rows[i].t;
    d.alpha = rows[i].alpha;
    d.beta = rows[i].beta;
    d.u_cos = rows[i].u_cos;
    if (i >= 2) {
      const TraceRow& r0 = rows[i - 2];
      const TraceRow& r1 = rows[i - 1];
      d.alpha_error = coefficient_error(extrapolate_line(r0.t, r0.alpha, r1.t, r1.alpha, d.t),
                                        d.alpha);
      d.beta_error =
          coefficient_error(extrapolate_line(r0.t, r0.beta, r1.t, r1.beta, d.t), d.beta);
    } else {
      d.alpha_error = kNaN;
      d.beta_error = kNaN;
    }
    out.steps.push_back(d);
  }
  return out;
}

}  // namespace vde
