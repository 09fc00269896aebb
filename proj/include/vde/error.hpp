// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vde {

enum class Errc {
  kDimensionMismatch,
  kOutOfRange,
  kZeroLatentNorm,
  kNonFiniteInput,
  kDegenerateDirection,
  kInsufficientHistory,
  kCoincidentAnchors,
  kInvalidSchedule,
  kShapeMismatch,
  kUnknownActivation,
  kDivergence,
  kGridTooSmall,
  kFlatBaseline,
  kZeroBaselineNorm,
  kNonFiniteState,
  kInvalidConfig,
  kIo,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the samplers when the state leaves the finite domain; carries the
// step at which it happened so batch runners can record a failed row.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(std::size_t step, const std::string& what)
      : Error(Errc::kNonFiniteState, "step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace vde
