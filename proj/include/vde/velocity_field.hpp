// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "vde/flow_core.hpp"

namespace vde {

// Atomic call counter that can live inside copyable fields; copies take a snapshot.
class EvalCounter {
 public:
  EvalCounter() = default;
  EvalCounter(const EvalCounter& other) noexcept : count_(other.load()) {}
  EvalCounter& operator=(const EvalCounter& other) noexcept {
    count_.store(other.load(), std::memory_order_relaxed);
    return *this;
  }

  void bump() noexcept { count_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t load() const noexcept { return count_.load(std::memory_order_relaxed); }
  void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

// A velocity model u(x, c, t). Every evaluate() call is one function
// evaluation and bumps eval_count() by exactly one, even when it throws.
// Implementations are immutable apart from the counter and safe to share
// across trajectory workers.
class VelocityField {
 public:
  virtual ~VelocityField() = default;

  // The conditioning vector is accepted for interface parity and ignored by
  // all built-in fields.
  Velocity evaluate(const Latent& x, std::span<const double> condition, double t) const;
  Velocity evaluate(const Latent& x, double t) const { return evaluate(x, {}, t); }

  // Latent dimension the field accepts, or 0 for any dimension.
  virtual std::size_t dim() const noexcept = 0;

  std::uint64_t eval_count() const noexcept { return evals_.load(); }
  void reset_eval_count() const noexcept { evals_.reset(); }

 protected:
  VelocityField() = default;
  VelocityField(const VelocityField&) = default;
  VelocityField& operator=(const VelocityField&) = default;

  virtual Velocity compute(const Latent& x, double t) const = 0;

 private:
  mutable EvalCounter evals_;
};

// v(x, t) = k. Euler integrates it exactly on any grid.
class ConstantField final : public VelocityField {
 public:
  explicit ConstantField(std::vector<double> k);

  std::size_t dim() const noexcept override { return k_.size(); }

 protected:
  Velocity compute(const Latent& x, double t) const override;

 private:
  std::vector<double> k_;
};

}  // namespace vde
