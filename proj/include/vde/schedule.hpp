// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vde {

enum class StepMode : char { kFull = 'F', kEstimated = 'E' };

// Per-step plan for a T-step trajectory:
//   steps [0, W)       Full (warm-up; the last two seed the anchor history)
//   steps [W, T-1)     repeating cycles of n Estimated then 1 Full;
//                      a trailing partial cycle stays Estimated
//   step T-1           Full
// so the Full count is W + 1 + floor((T - 1 - W) / (n + 1)) and
// NFE = calls_per_step * Full count.
class SamplingSchedule {
 public:
  std::size_t steps() const noexcept { return plan_.size(); }
  std::size_t warmup() const noexcept { return warmup_; }
  std::size_t interval() const noexcept { return interval_; }
  std::size_t calls_per_step() const noexcept { return calls_per_step_; }

  std::span<const StepMode> plan() const noexcept { return plan_; }
  StepMode operator[](std::size_t i) const noexcept { return plan_[i]; }

  std::size_t full_count() const noexcept;
  std::uint64_t nfe() const noexcept { return calls_per_step_ * full_count(); }

  // Warm-up block, each complete cycle, any trailing partial cycle and the
  // final step, separated by spaces: "FFFFFFF EEF EEF ... EEF F".
  std::string compact() const;
  // {"T":..,"W":..,"n":..,"calls_per_step":..,"plan":"FFF..","compact":"..","full_steps":..,"nfe":..}
  std::string to_json() const;

 private:
  friend SamplingSchedule plan_schedule(std::size_t, std::size_t, std::size_t, std::size_t);

  std::vector<StepMode> plan_;
  std::size_t warmup_ = 0;
  std::size_t interval_ = 0;
  std::size_t calls_per_step_ = 1;
};

// Requires 2 <= warmup <= steps - 1, interval >= 1, calls_per_step >= 1;
// throws kInvalidSchedule otherwise. warmup = steps - 1 gives an all-Full plan.
SamplingSchedule plan_schedule(std::size_t steps, std::size_t warmup, std::size_t interval,
                               std::size_t calls_per_step = 1);

}  // namespace vde
