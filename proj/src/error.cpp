// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/error.hpp"

namespace vde {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kZeroLatentNorm: return "ZeroLatentNorm";
    case Errc::kNonFiniteInput: return "NonFiniteInput";
    case Errc::kDegenerateDirection: return "DegenerateDirection";
    case Errc::kInsufficientHistory: return "InsufficientHistory";
    case Errc::kCoincidentAnchors: return "CoincidentAnchors";
    case Errc::kInvalidSchedule: return "InvalidSchedule";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kUnknownActivation: return "UnknownActivation";
    case Errc::kDivergence: return "Divergence";
    case Errc::kGridTooSmall: return "GridTooSmall";
    case Errc::kFlatBaseline: return "FlatBaseline";
    case Errc::kZeroBaselineNorm: return "ZeroBaselineNorm";
    case Errc::kNonFiniteState: return "NonFiniteState";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace vde
