// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "vde/simd/kernels.hpp"

namespace vde::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = a[i] - b[i];
    s += e * e;
  }
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpby_scalar(double alpha, const double* x, double beta, const double* y, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void gemv_scalar(const double* w, std::size_t rows, std::size_t cols, const double* x,
                 const double* bias, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    out[r] = bias ? s + bias[r] : s;
  }
}

void gemv_t_acc_scalar(const double* w, std::size_t rows, std::size_t cols, const double* d,
                       double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    const double dr = d[r];
    for (std::size_t c = 0; c < cols; ++c) out[c] += row[c] * dr;
  }
}

void ger_acc_scalar(double* g, std::size_t rows, std::size_t cols, const double* d,
                    const double* x) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = g + r * cols;
    const double dr = d[r];
    for (std::size_t c = 0; c < cols; ++c) row[c] += dr * x[c];
  }
}

void adam_update_scalar(double* param, const double* grad, double* m, double* v, std::size_t n,
                        const AdamParams& p) {
  const double step = p.lr / p.bias_correction1;
  const double inv_bc2 = 1.0 / p.bias_correction2;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = p.beta1 * m[i] + (1.0 - p.beta1) * grad[i];
    v[i] = p.beta2 * v[i] + (1.0 - p.beta2) * grad[i] * grad[i];
    param[i] -= step * m[i] / (std::sqrt(v[i] * inv_bc2) + p.eps);
  }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{
      Isa::kScalar,   "scalar",           dot_scalar,        sum_sq_scalar,
      sq_diff_scalar, axpy_scalar,        axpby_scalar,      gemv_scalar,
      gemv_t_acc_scalar, ger_acc_scalar,  adam_update_scalar,
  };
  return table;
}

}  // namespace vde::simd
