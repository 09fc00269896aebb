// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Double-precision inner-loop kernels. Every kernel exists as a portable scalar
// reference plus ISA-specific variants; one table is selected at runtime.
//
// This header is included by the ISA translation units, which are compiled with
// extra target flags. Keep it free of inline function bodies so no
// AVX2-compiled copy of a shared inline can leak into scalar code.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace vde::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct AdamParams {
  double lr;
  double beta1;
  double beta2;
  double eps;
  double bias_correction1;  // 1 - beta1^step
  double bias_correction2;  // 1 - beta2^step
};

struct KernelTable {
  Isa isa;
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*sq_diff)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = alpha * x + beta * y; out may alias x or y
  void (*axpby)(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n);
  // out = W * x + bias, W row-major rows x cols; bias may be null
  void (*gemv)(const double* w, std::size_t rows, std::size_t cols, const double* x,
               const double* bias, double* out);
  // out += W^T * d, W row-major rows x cols, d has `rows` entries, out has `cols`
  void (*gemv_t_acc)(const double* w, std::size_t rows, std::size_t cols, const double* d,
                     double* out);
  // g += d * x^T, g row-major rows x cols
  void (*ger_acc)(double* g, std::size_t rows, std::size_t cols, const double* d,
                  const double* x);
  void (*adam_update)(double* param, const double* grad, double* m, double* v, std::size_t n,
                      const AdamParams& p);
};

const KernelTable& scalar_kernels() noexcept;
// Null when the ISA was not compiled in or the running CPU lacks it.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

const KernelTable* kernels_for(Isa isa) noexcept;
Isa best_available_isa() noexcept;

// Active table. First use resolves VDE_SIMD (scalar | avx2 | neon | auto) and
// falls back to the best available ISA.
const KernelTable& active() noexcept;
// Returns false (and leaves the selection unchanged) if the ISA is unavailable.
bool select(Isa isa) noexcept;

std::optional<Isa> parse_isa(std::string_view name) noexcept;
std::string_view isa_name(Isa isa) noexcept;

// Span front-ends over the active table. Callers validate sizes.
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double sum_sq(std::span<const double> a) noexcept;
double sq_diff(std::span<const double> a, std::span<const double> b) noexcept;
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;
void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out) noexcept;

}  // namespace vde::simd
