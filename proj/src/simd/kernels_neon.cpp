// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

// AArch64 Advanced SIMD variants. NEON is part of the AArch64 baseline, so no
// runtime probe is needed once this file is in the build.

#include <arm_neon.h>

#include <cmath>

#include "isa_tables.hpp"

namespace vde::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0);
  float64x2_t acc3 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc2 = vfmaq_f64(acc2, vld1q_f64(a + i + 4), vld1q_f64(b + i + 4));
    acc3 = vfmaq_f64(acc3, vld1q_f64(a + i + 6), vld1q_f64(b + i + 6));
  }
  for (; i + 2 <= n; i += 2) acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(vaddq_f64(vaddq_f64(acc0, acc1), vaddq_f64(acc2, acc3)));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_neon(const double* a, std::size_t n) { return dot_neon(a, a, n); }

double sq_diff_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t e0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t e1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc0 = vfmaq_f64(acc0, e0, e0);
    acc1 = vfmaq_f64(acc1, e1, e1);
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double e = a[i] - b[i];
    s += e * e;
  }
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpby_neon(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t by = vmulq_f64(vb, vld1q_f64(y + i));
    vst1q_f64(out + i, vfmaq_f64(by, va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void gemv_neon(const double* w, std::size_t rows, std::size_t cols, const double* x,
               const double* bias, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double s = dot_neon(w + r * cols, x, cols);
    out[r] = bias ? s + bias[r] : s;
  }
}

void gemv_t_acc_neon(const double* w, std::size_t rows, std::size_t cols, const double* d,
                     double* out) {
  for (std::size_t r = 0; r < rows; ++r) axpy_neon(d[r], w + r * cols, out, cols);
}

void ger_acc_neon(double* g, std::size_t rows, std::size_t cols, const double* d,
                  const double* x) {
  for (std::size_t r = 0; r < rows; ++r) axpy_neon(d[r], x, g + r * cols, cols);
}

void adam_update_neon(double* param, const double* grad, double* m, double* v, std::size_t n,
                      const AdamParams& p) {
  const double step = p.lr / p.bias_correction1;
  const double inv_bc2 = 1.0 / p.bias_correction2;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t g = vld1q_f64(grad + i);
    const float64x2_t mi = vaddq_f64(vmulq_n_f64(vld1q_f64(m + i), p.beta1),
                                     vmulq_n_f64(g, 1.0 - p.beta1));
    const float64x2_t vi = vaddq_f64(vmulq_n_f64(vld1q_f64(v + i), p.beta2),
                                     vmulq_f64(vmulq_n_f64(g, 1.0 - p.beta2), g));
    vst1q_f64(m + i, mi);
    vst1q_f64(v + i, vi);
    const float64x2_t denom = vaddq_f64(vsqrtq_f64(vmulq_n_f64(vi, inv_bc2)), vdupq_n_f64(p.eps));
    const float64x2_t upd = vdivq_f64(vmulq_n_f64(mi, step), denom);
    vst1q_f64(param + i, vsubq_f64(vld1q_f64(param + i), upd));
  }
  for (; i < n; ++i) {
    m[i] = p.beta1 * m[i] + (1.0 - p.beta1) * grad[i];
    v[i] = p.beta2 * v[i] + (1.0 - p.beta2) * grad[i] * grad[i];
    param[i] -= step * m[i] / (std::sqrt(v[i] * inv_bc2) + p.eps);
  }
}

}  // namespace

namespace detail {

const KernelTable* neon_table() noexcept {
  static const KernelTable table{
      Isa::kNeon,   "neon",          dot_neon,        sum_sq_neon,
      sq_diff_neon, axpy_neon,       axpby_neon,      gemv_neon,
      gemv_t_acc_neon, ger_acc_neon, adam_update_neon,
  };
  return &table;
}

}  // namespace detail
}  // namespace vde::simd
