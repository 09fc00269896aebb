// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <string>

#include "isa_tables.hpp"
#include "vde/simd/kernels.hpp"

namespace vde::simd {
namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* resolve_initial() noexcept {
  if (const char* env = std::getenv("VDE_SIMD")) {
    const std::string_view name(env);
    if (name != "auto") {
      if (auto isa = parse_isa(name)) {
        if (const KernelTable* t = kernels_for(*isa)) return t;
      }
    }
  }
  return kernels_for(best_available_isa());
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> current{resolve_initial()};
  return current;
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
#if defined(VDE_HAVE_AVX2)
  return cpu_has_avx2_fma() ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() noexcept {
#if defined(VDE_HAVE_NEON)
  return detail::neon_table();
#else
  return nullptr;
#endif
}

const KernelTable* kernels_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return &scalar_kernels();
    case Isa::kAvx2: return avx2_kernels();
    case Isa::kNeon: return neon_kernels();
  }
  return nullptr;
}

Isa best_available_isa() noexcept {
  if (avx2_kernels()) return Isa::kAvx2;
  if (neon_kernels()) return Isa::kNeon;
  return Isa::kScalar;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  const KernelTable* t = kernels_for(isa);
  if (!t) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "neon") return Isa::kNeon;
  return std::nullopt;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().dot(a.data(), b.data(), a.size());
}

double sum_sq(std::span<const double> a) noexcept { return active().sum_sq(a.data(), a.size()); }

double sq_diff(std::span<const double> a, std::span<const double> b) noexcept {
  return active().sq_diff(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out) noexcept {
  active().axpby(alpha, x.data(), beta, y.data(), out.data(), x.size());
}

}  // namespace vde::simd
