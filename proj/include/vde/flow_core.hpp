// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Core value types shared by every module: latents and velocities as finite
// 64-bit vectors with optional 2-D grid metadata, the integration time grid,
// and the handful of vector-algebra primitives the decomposition is built on.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vde/error.hpp"

namespace vde {

// Flat(d) or grid(h, w) with h*w = d. Metadata only; all math is on the flat vector.
class Shape {
 public:
  static Shape flat(std::size_t dim);
  static Shape grid(std::size_t rows, std::size_t cols);

  std::size_t size() const noexcept { return rows_ * cols_; }
  bool is_grid() const noexcept { return grid_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  Shape(std::size_t rows, std::size_t cols, bool grid) : rows_(rows), cols_(cols), grid_(grid) {}

  std::size_t rows_ = 1;
  std::size_t cols_ = 0;
  bool grid_ = false;
};

bool all_finite(std::span<const double> values) noexcept;

namespace detail {
void validate_vector(const Shape& shape, std::span<const double> data);
}  // namespace detail

// Immutable finite vector of dimension >= 2. The tag keeps latents and
// velocities from being mixed up at API boundaries.
template <class Tag>
class FiniteVector {
 public:
  explicit FiniteVector(std::vector<double> data)
      : shape_(Shape::flat(data.size())), data_(std::move(data)) {
    detail::validate_vector(shape_, data_);
  }

  FiniteVector(Shape shape, std::vector<double> data) : shape_(shape), data_(std::move(data)) {
    detail::validate_vector(shape_, data_);
  }

  const Shape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return data_.size(); }
  std::span<const double> values() const noexcept { return data_; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

struct LatentTag {};
struct VelocityTag {};

using Latent = FiniteVector<LatentTag>;
using Velocity = FiniteVector<VelocityTag>;

template <class T>
concept VectorLike = requires(const T& v) {
  { v.values() } -> std::convertible_to<std::span<const double>>;
  { v.shape() } -> std::convertible_to<const Shape&>;
};

// Throws kDimensionMismatch.
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a) noexcept;
// s * a + b
std::vector<double> axpy(double s, std::span<const double> a, std::span<const double> b);

template <VectorLike A, VectorLike B>
double dot(const A& a, const B& b) {
  return dot(a.values(), b.values());
}

template <VectorLike A>
double norm(const A& a) noexcept {
  return norm(a.values());
}

// s * a + b, carrying b's type and shape.
template <VectorLike A, VectorLike B>
B axpy(double s, const A& a, const B& b) {
  return B(b.shape(), axpy(s, a.values(), b.values()));
}

// t * x1 + (1 - t) * x0. Throws kDimensionMismatch, kOutOfRange for t outside [0, 1].
Latent interpolate(const Latent& x0, const Latent& x1, double t);

enum class Spacing { kUniform, kShifted };

std::string_view spacing_name(Spacing s) noexcept;

// Strictly increasing integration times starting at 0 and ending below 1.
// The Euler step out of the last node reaches t = 1.
class TimeGrid {
 public:
  // t_i = i / T
  static TimeGrid uniform(std::size_t steps);
  // Time-shifted grid: with s_i = 1 - i/T, t_i = 1 - shift*s_i / (1 + (shift - 1)*s_i).
  // shift = 1 reproduces the uniform grid; shift > 1 spends more steps near t = 0.
  static TimeGrid shifted(std::size_t steps, double shift);
  static TimeGrid from_times(std::vector<double> times);

  std::size_t size() const noexcept { return times_.size(); }
  double operator[](std::size_t i) const noexcept { return times_[i]; }
  std::span<const double> times() const noexcept { return times_; }
  // t_{i+1} - t_i, and 1 - t_{T-1} for the last node.
  double dt(std::size_t i) const noexcept {
    return i + 1 < times_.size() ? times_[i + 1] - times_[i] : 1.0 - times_[i];
  }

 private:
  explicit TimeGrid(std::vector<double> times) : times_(std::move(times)) {}

  std::vector<double> times_;
};

}  // namespace vde
