// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/schedule.hpp"

#include <algorithm>

#include <json.hpp>

#include "vde/error.hpp"

namespace vde {

SamplingSchedule plan_schedule(std::size_t steps, std::size_t warmup, std::size_t interval,
                               std::size_t calls_per_step) {
  if (warmup < 2) {
    fail(Errc::kInvalidSchedule, "warm-up of " + std::to_string(warmup) +
                                     " steps cannot seed two anchors (need >= 2)");
  }
  if (warmup + 1 > steps) {
    fail(Errc::kInvalidSchedule, "warm-up " + std::to_string(warmup) + " must be at most T - 1 = " +
                                     std::to_string(steps == 0 ? 0 : steps - 1));
  }
  require(interval >= 1, Errc::kInvalidSchedule, "interval must be >= 1");
  require(calls_per_step >= 1, Errc::kInvalidSchedule, "calls per step must be >= 1");

  SamplingSchedule s;
  s.warmup_ = warmup;
  s.interval_ = interval;
  s.calls_per_step_ = calls_per_step;
  s.plan_.assign(steps, StepMode::kFull);
  for (std::size_t i = warmup; i + 1 < steps; ++i) {
    const std::size_t pos = (i - warmup) % (interval + 1);
    s.plan_[i] = pos == interval ? StepMode::kFull : StepMode::kEstimated;
  }
  return s;
}

std::size_t SamplingSchedule::full_count() const noexcept {
  return static_cast<std::size_t>(std::count(plan_.begin(), plan_.end(), StepMode::kFull));
}

std::string SamplingSchedule::compact() const {
  std::string out(warmup_, 'F');
  const std::size_t cycle = interval_ + 1;
  for (std::size_t i = warmup_; i + 1 < plan_.size(); ++i) {
    if ((i - warmup_) % cycle == 0) out += ' ';
    out += static_cast<char>(plan_[i]);
  }
  out += " F";
  return out;
}

std::string SamplingSchedule::to_json() const {
  std::string plan;
  for (StepMode m : plan_) plan += static_cast<char>(m);
  nlohmann::ordered_json j;
  j["T"] = steps();
  j["W"] = warmup_;
  j["n"] = interval_;
  j["calls_per_step"] = calls_per_step_;
  j["plan"] = plan;
  j["compact"] = compact();
  j["full_steps"] = full_count();
  j["nfe"] = nfe();
  return j.dump();
}

}  // namespace vde
