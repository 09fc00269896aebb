// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/flow_core.hpp"

#include <cmath>
#include <string>

#include "vde/simd/kernels.hpp"

namespace vde {

Shape Shape::flat(std::size_t dim) { return Shape(1, dim, false); }

Shape Shape::grid(std::size_t rows, std::size_t cols) {
  require(rows > 0 && cols > 0, Errc::kShapeMismatch, "grid dimensions must be positive");
  return Shape(rows, cols, true);
}

bool all_finite(std::span<const double> values) noexcept {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace detail {

void validate_vector(const Shape& shape, std::span<const double> data) {
  if (shape.size() != data.size()) {
    fail(Errc::kShapeMismatch, "shape covers " + std::to_string(shape.size()) +
                                   " entries but data has " + std::to_string(data.size()));
  }
  require(data.size() >= 2, Errc::kDimensionMismatch, "vectors need at least 2 entries");
  require(all_finite(data), Errc::kNonFiniteInput, "vector has NaN or Inf entries");
}

}  // namespace detail

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(Errc::kDimensionMismatch,
         "dot of sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  return simd::dot(a, b);
}

double norm(std::span<const double> a) noexcept { return std::sqrt(simd::sum_sq(a)); }

std::vector<double> axpy(double s, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(Errc::kDimensionMismatch,
         "axpy of sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  std::vector<double> out(b.begin(), b.end());
  simd::axpy(s, a, out);
  return out;
}

Latent interpolate(const Latent& x0, const Latent& x1, double t) {
  require(x0.dim() == x1.dim(), Errc::kDimensionMismatch, "interpolate endpoints differ in size");
  require(t >= 0.0 && t <= 1.0, Errc::kOutOfRange, "interpolation time outside [0, 1]");
  std::vector<double> out(x0.dim());
  simd::axpby(t, x1.values(), 1.0 - t, x0.values(), out);
  return Latent(x0.shape(), std::move(out));
}

std::string_view spacing_name(Spacing s) noexcept {
  return s == Spacing::kUniform ? "uniform" : "shifted";
}

TimeGrid TimeGrid::uniform(std::size_t steps) {
  require(steps >= 1, Errc::kOutOfRange, "time grid needs at least one step");
  std::vector<double> times(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    times[i] = static_cast<double>(i) / static_cast<double>(steps);
  }
  return TimeGrid(std::move(times));
}

TimeGrid TimeGrid::shifted(std::size_t steps, double shift) {
  require(steps >= 1, Errc::kOutOfRange, "time grid needs at least one step");
  require(std::isfinite(shift) && shift > 0.0, Errc::kOutOfRange, "shift must be positive");
  std::vector<double> times(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double s = 1.0 - static_cast<double>(i) / static_cast<double>(steps);
    times[i] = 1.0 - shift * s / (1.0 + (shift - 1.0) * s);
  }
  times[0] = 0.0;
  return from_times(std::move(times));
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
  require(!times.empty(), Errc::kOutOfRange, "time grid needs at least one step");
  require(times.front() == 0.0, Errc::kOutOfRange, "time grid must start at 0");
  require(times.back() < 1.0, Errc::kOutOfRange, "time grid must end below 1");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]), Errc::kNonFiniteInput, "time grid has non-finite nodes");
    if (i > 0 && !(times[i] > times[i - 1])) {
      fail(Errc::kOutOfRange, "time grid not strictly increasing at node " + std::to_string(i));
    }
  }
  return TimeGrid(std::move(times));
}

}  // namespace vde
