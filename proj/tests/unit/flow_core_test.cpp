// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "vde/error.hpp"
#include "vde/flow_core.hpp"
#include "vde/io.hpp"
#include "vde/rng.hpp"

using vde::Errc;
using vde::Latent;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const vde::Error& e) {
    return e.code();
  }
  FAIL("expected vde::Error");
  return Errc::kIo;
}

}  // namespace

TEST_CASE("interpolate hits both endpoints and the midpoint") {
  const Latent x0({1, 0});
  const Latent x1({0, 1});
  CHECK(vde::interpolate(x0, x1, 0.0) == x0);
  CHECK(vde::interpolate(x0, x1, 1.0) == x1);
  const auto mid = vde::interpolate(Latent({2, 0}), Latent({0, 2}), 0.5);
  CHECK(mid[0] == 1.0);
  CHECK(mid[1] == 1.0);
}

TEST_CASE("interpolate rejects bad inputs") {
  const Latent a({1, 2});
  CHECK(code_of([&] { (void)vde::interpolate(a, Latent({1, 2, 3}), 0.5); }) ==
        Errc::kDimensionMismatch);
  CHECK(code_of([&] { (void)vde::interpolate(a, a, 1.5); }) == Errc::kOutOfRange);
  CHECK(code_of([&] { (void)vde::interpolate(a, a, -0.1); }) == Errc::kOutOfRange);
}

TEST_CASE("interpolate is affine in t") {
  vde::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(16), b(16);
    for (auto& e : a) e = rng.normal();
    for (auto& e : b) e = rng.normal();
    const Latent x0(a), x1(b);
    const double ta = rng.uniform(), tb = rng.uniform();
    const auto mid = vde::interpolate(x0, x1, 0.5 * (ta + tb));
    const auto pa = vde::interpolate(x0, x1, ta);
    const auto pb = vde::interpolate(x0, x1, tb);
    const double scale = vde::norm(mid);
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(std::abs(mid[i] - 0.5 * (pa[i] + pb[i])) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("vector primitives") {
  CHECK(vde::dot(Latent({1, 0}), Latent({0, 1})) == 0.0);
  CHECK(vde::norm(Latent({3, 4})) == 5.0);
  const auto r = vde::axpy(2.0, Latent({1, 1}), Latent({0, 1}));
  CHECK(r[0] == 2.0);
  CHECK(r[1] == 3.0);
  CHECK(code_of([] { (void)vde::dot(Latent({1, 0}), Latent({1, 0, 0})); }) ==
        Errc::kDimensionMismatch);

  vde::Rng rng(5);
  std::vector<double> big(1001);
  for (auto& e : big) e = rng.normal() * 1e3;
  const Latent a(big);
  CHECK(vde::norm(vde::axpy(-1.0, a, a)) <= 1e-14 * vde::norm(a));
}

TEST_CASE("latents enforce their invariants") {
  CHECK(code_of([] { (void)Latent({1.0}); }) == Errc::kDimensionMismatch);
  CHECK(code_of([] { (void)Latent({1.0, std::numeric_limits<double>::quiet_NaN()}); }) ==
        Errc::kNonFiniteInput);
  CHECK(code_of([] { (void)Latent(vde::Shape::grid(2, 3), {1, 2, 3, 4, 5}); }) ==
        Errc::kShapeMismatch);
  const Latent g(vde::Shape::grid(2, 2), {1, 2, 3, 4});
  CHECK(g.shape().is_grid());
  CHECK(g.shape().rows() == 2);
}

TEST_CASE("latent json round-trip keeps shape and bits") {
  const Latent g(vde::Shape::grid(2, 3), {0.1, -2.5, 1e-300, 3.0, 1.0 / 3.0, -0.0});
  const auto text = vde::latent_to_json(g);
  CHECK(text.find("\"shape\":[2,3]") != std::string::npos);
  const auto back = vde::latent_from_json(text);
  CHECK(back.shape() == g.shape());
  for (std::size_t i = 0; i < g.dim(); ++i) CHECK(back[i] == g[i]);

  const auto flat = vde::latent_from_json(R"({"shape":[3],"data":[1,2,3]})");
  CHECK_FALSE(flat.shape().is_grid());
  CHECK(code_of([] { (void)vde::latent_from_json(R"({"shape":[2,2],"data":[1,2,3]})"); }) ==
        Errc::kShapeMismatch);
  CHECK(code_of([] { (void)vde::latent_from_json("{"); }) == Errc::kIo);
}

TEST_CASE("time grids") {
  const auto u = vde::TimeGrid::uniform(4);
  REQUIRE(u.size() == 4);
  CHECK(u[0] == 0.0);
  CHECK(u[3] == 0.75);
  CHECK(u.dt(3) == 0.25);

  // shift = 1 reproduces the uniform grid
  const auto same = vde::TimeGrid::shifted(50, 1.0);
  const auto uni = vde::TimeGrid::uniform(50);
  for (std::size_t i = 0; i < 50; ++i) CHECK(same[i] == doctest::Approx(uni[i]).epsilon(1e-15));

  const auto s = vde::TimeGrid::shifted(50, 3.0);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.dt(i) > 0.0);
    total += s.dt(i);
  }
  CHECK(s[0] == 0.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  // More resolution near t = 0.
  CHECK(s.dt(0) < s.dt(48));

  CHECK(code_of([] { (void)vde::TimeGrid::from_times({0.0, 0.5, 0.5}); }) ==
        Errc::kOutOfRange);
  CHECK(code_of([] { (void)vde::TimeGrid::from_times({0.1, 0.5}); }) == Errc::kOutOfRange);
  CHECK(code_of([] { (void)vde::TimeGrid::from_times({0.0, 1.0}); }) == Errc::kOutOfRange);
}
