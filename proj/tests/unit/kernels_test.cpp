// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <doctest.h>

#include "vde/rng.hpp"
#include "vde/simd/kernels.hpp"

namespace {

using vde::simd::KernelTable;

std::vector<double> random_vector(vde::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.uniform(-2.0, 2.0);
  return v;
}

// Every compiled-in and supported non-scalar table.
std::vector<const KernelTable*> accelerated_tables() {
  std::vector<const KernelTable*> out;
  if (auto* t = vde::simd::avx2_kernels()) out.push_back(t);
  if (auto* t = vde::simd::neon_kernels()) out.push_back(t);
  return out;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("scalar kernels agree with plain loops") {
  const auto& k = vde::simd::scalar_kernels();
  const double a[] = {1, 2, 3};
  const double b[] = {4, -5, 6};
  CHECK(k.dot(a, b, 3) == 12.0);
  CHECK(k.sum_sq(a, 3) == 14.0);
  CHECK(k.sq_diff(a, b, 3) == 9.0 + 49.0 + 9.0);

  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[2] == 7.0);

  double out[3];
  k.axpby(2.0, a, -1.0, b, out, 3);
  CHECK(out[0] == -2.0);
  CHECK(out[1] == 9.0);

  // 2x3 matrix
  const double w[] = {1, 0, 2, 0, 1, -1};
  const double bias[] = {0.5, -0.5};
  double r[2];
  k.gemv(w, 2, 3, a, bias, r);
  CHECK(r[0] == 7.5);
  CHECK(r[1] == -1.5);

  double acc[3] = {0, 0, 0};
  const double d[] = {1, 2};
  k.gemv_t_acc(w, 2, 3, d, acc);
  CHECK(acc[0] == 1.0);
  CHECK(acc[1] == 2.0);
  CHECK(acc[2] == 0.0);

  double g[6] = {};
  k.ger_acc(g, 2, 3, d, a);
  CHECK(g[5] == 6.0);
}

TEST_CASE("accelerated kernels match the scalar reference") {
  const auto& ref = vde::simd::scalar_kernels();
  const auto tables = accelerated_tables();
  if (tables.empty()) MESSAGE("no accelerated ISA available on this host");
  vde::Rng rng(11);
  // Sizes straddle every vector width and unroll factor, including remainders.
  const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 1027};
  for (const auto* k : tables) {
    CAPTURE(k->name);
    for (std::size_t n : sizes) {
      CAPTURE(n);
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);
      const double scale = 1e-13 * (static_cast<double>(n) + 1.0);
      CHECK(std::abs(k->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
            scale * 4);
      CHECK(std::abs(k->sum_sq(a.data(), n) - ref.sum_sq(a.data(), n)) <= scale * 4);
      CHECK(std::abs(k->sq_diff(a.data(), b.data(), n) - ref.sq_diff(a.data(), b.data(), n)) <=
            scale * 16);

      auto y1 = b;
      auto y2 = b;
      ref.axpy(0.75, a.data(), y1.data(), n);
      k->axpy(0.75, a.data(), y2.data(), n);
      check_close(y1, y2, 1e-15);

      std::vector<double> o1(n), o2(n);
      ref.axpby(0.3, a.data(), -1.7, b.data(), o1.data(), n);
      k->axpby(0.3, a.data(), -1.7, b.data(), o2.data(), n);
      check_close(o1, o2, 1e-15);

      // In-place aliasing of the output with x.
      auto alias = a;
      k->axpby(0.3, alias.data(), -1.7, b.data(), alias.data(), n);
      check_close(alias, o1, 1e-15);
    }

    for (std::size_t rows : {1u, 3u, 8u, 13u}) {
      for (std::size_t cols : {1u, 2u, 5u, 11u, 64u}) {
        CAPTURE(rows);
        CAPTURE(cols);
        const auto w = random_vector(rng, rows * cols);
        const auto x = random_vector(rng, cols);
        const auto bias = random_vector(rng, rows);
        const auto d = random_vector(rng, rows);
        std::vector<double> r1(rows), r2(rows);
        ref.gemv(w.data(), rows, cols, x.data(), bias.data(), r1.data());
        k->gemv(w.data(), rows, cols, x.data(), bias.data(), r2.data());
        check_close(r1, r2, 1e-12);
        ref.gemv(w.data(), rows, cols, x.data(), nullptr, r1.data());
        k->gemv(w.data(), rows, cols, x.data(), nullptr, r2.data());
        check_close(r1, r2, 1e-12);

        auto t1 = random_vector(rng, cols);
        auto t2 = t1;
        ref.gemv_t_acc(w.data(), rows, cols, d.data(), t1.data());
        k->gemv_t_acc(w.data(), rows, cols, d.data(), t2.data());
        check_close(t1, t2, 1e-12);

        auto g1 = random_vector(rng, rows * cols);
        auto g2 = g1;
        ref.ger_acc(g1.data(), rows, cols, d.data(), x.data());
        k->ger_acc(g2.data(), rows, cols, d.data(), x.data());
        check_close(g1, g2, 1e-14);
      }
    }

    for (std::size_t n : {1u, 4u, 7u, 130u}) {
      const auto grad = random_vector(rng, n);
      auto p1 = random_vector(rng, n);
      auto m1 = random_vector(rng, n);
      std::vector<double> v1(n);
      for (auto& e : v1) e = rng.uniform();
      auto p2 = p1, m2 = m1, v2 = v1;
      const vde::simd::AdamParams params{1e-3, 0.9, 0.999, 1e-8, 1 - 0.9 * 0.9,
                                         1 - 0.999 * 0.999};
      ref.adam_update(p1.data(), grad.data(), m1.data(), v1.data(), n, params);
      k->adam_update(p2.data(), grad.data(), m2.data(), v2.data(), n, params);
      check_close(p1, p2, 1e-14);
      check_close(m1, m2, 1e-15);
      check_close(v1, v2, 1e-15);
    }
  }
}

TEST_CASE("isa selection round-trips and rejects unavailable tables") {
  const auto before = vde::simd::active().isa;
  CHECK(vde::simd::select(vde::simd::Isa::kScalar));
  CHECK(vde::simd::active().isa == vde::simd::Isa::kScalar);
  CHECK(vde::simd::parse_isa("avx2") == vde::simd::Isa::kAvx2);
  CHECK_FALSE(vde::simd::parse_isa("sse9").has_value());
  CHECK(vde::simd::isa_name(vde::simd::Isa::kNeon) == "neon");
  CHECK(vde::simd::kernels_for(vde::simd::Isa::kScalar) == &vde::simd::scalar_kernels());
  const auto best = vde::simd::best_available_isa();
  CHECK(vde::simd::kernels_for(best) != nullptr);
  CHECK(vde::simd::select(before));
}
