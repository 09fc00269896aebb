// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Explicit Euler integration of dx/dt = v(x, t) over a TimeGrid, either with a
// model call at every step or with the anchor-and-estimate schedule.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vde/estimator.hpp"
#include "vde/flow_core.hpp"
#include "vde/schedule.hpp"
#include "vde/velocity_field.hpp"

namespace vde {

// Full rows carry the true decomposition, Estimated rows the extrapolated
// alpha/beta and the reused direction. u_cos is the cosine between this row's
// direction and the previous row's (NaN on row 0).
struct TraceRow {
  std::size_t step = 0;
  double t = 0.0;
  StepMode mode = StepMode::kFull;
  double alpha = 0.0;
  double beta = 0.0;
  double u_cos = 0.0;
  double x_norm = 0.0;
  double v_norm = 0.0;
  std::uint64_t nfe = 0;  // cumulative
};

struct TrajectoryTrace {
  std::vector<TraceRow> rows;
  double wall_seconds = 0.0;

  // step,t,mode,alpha,beta,u_cos,x_norm,v_norm,nfe
  std::string to_csv() const;
};

struct SampleResult {
  Latent final_state;
  TrajectoryTrace trace;
  std::uint64_t nfe = 0;

  // {"nfe":..,"final":{"shape":..,"data":..}}
  std::string to_json() const;
};

enum class VdeMode { kFixedWarmup, kDynamic };

struct SamplerOptions {
  std::size_t calls_per_step = 1;
  std::span<const double> condition{};
};

// Calls the field calls_per_step times at every step (all calls return the
// same value; the repeats meter guidance-style passes). Throws
// NonFiniteStateError with the step index if the state leaves the finite domain.
SampleResult sample_full(const VelocityField& field, const Latent& x0, const TimeGrid& grid,
                         const SamplerOptions& options = {});

// Fixed mode follows the schedule verbatim. Dynamic mode runs Full steps until
// the stable-phase test fires on the last three decompositions (at step k),
// then follows plan_schedule(T, k + 1, n, calls). Estimated steps always use
// the current latent. Throws kInvalidSchedule when schedule and grid lengths
// differ, plus the sample_full errors.
SampleResult sample_vde(const VelocityField& field, const Latent& x0, const TimeGrid& grid,
                        const SamplingSchedule& schedule, VdeMode mode = VdeMode::kFixedWarmup,
                        const StablePhaseConfig& stable = {},
                        std::span<const double> condition = {});

struct StepDynamics {
  std::size_t step = 0;
  double t = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double u_cos = 0.0;       // cos(u_{i-1}, u_i); NaN on step 0
  double alpha_error = 0.0;  // two-step extrapolation error; NaN before step 2
  double beta_error = 0.0;
};

struct DynamicsSummary {
  double alpha_error_pct = 0.0;
  double beta_error_pct = 0.0;
  double direction_error_pct = 0.0;  // mean of (1 - cos) in percent
  double mean_u_cos = 0.0;
  std::size_t samples = 0;           // extrapolated steps included
};

struct ComponentDynamics {
  TrajectoryTrace trace;
  std::vector<StepDynamics> steps;

  // Means over steps whose inputs all lie at or after `skip`: coefficient
  // errors for i with i - 2 >= skip, cosines for i with i - 1 >= skip.
  DynamicsSummary summarize(std::size_t skip = 0) const;
};

// Full sampling plus, per step i >= 2, the relative error of predicting
// alpha_i and beta_i from the line through steps i-2 and i-1.
ComponentDynamics record_component_dynamics(const VelocityField& field, const Latent& x0,
                                            const TimeGrid& grid);

}  // namespace vde
