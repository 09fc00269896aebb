// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <doctest.h>

#include "vde/controlled_field.hpp"
#include "vde/decomposition.hpp"
#include "vde/error.hpp"
#include "vde/estimator.hpp"
#include "vde/rng.hpp"

using vde::Decomposition;
using vde::Latent;

namespace {

vde::Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const vde::Error& e) {
    return e.code();
  }
  FAIL("expected vde::Error");
  return vde::Errc::kIo;
}

Decomposition make(double t, double alpha, double beta, std::vector<double> u) {
  return Decomposition{alpha, beta, std::move(u), t};
}

// Direct transcription of the stability rule, independent of the library:
// predict coefficient k at i+2 from the secant through i and i+1, compare
// with the truth (relative, floored at 1e-9), and require u_i . u_{i+1} > delta.
std::optional<std::size_t> brute_force_stable(const std::vector<Decomposition>& tr, double eps,
                                              double delta) {
  for (std::size_t i = 0; i + 2 < tr.size(); ++i) {
    const auto& a = tr[i];
    const auto& b = tr[i + 1];
    const auto& c = tr[i + 2];
    const double slope_a = (b.alpha - a.alpha) / (b.t - a.t);
    const double slope_b = (b.beta - a.beta) / (b.t - a.t);
    const double ah = a.alpha + slope_a * (c.t - a.t);
    const double bh = a.beta + slope_b * (c.t - a.t);
    const double ea = std::abs(ah - c.alpha) / std::max(std::abs(c.alpha), 1e-9);
    const double eb = std::abs(bh - c.beta) / std::max(std::abs(c.beta), 1e-9);
    double cosine = 0;
    for (std::size_t k = 0; k < a.u.size(); ++k) cosine += a.u[k] * b.u[k];
    if (std::max(ea, eb) < eps && cosine > delta) return i;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("line extrapolation") {
  CHECK(vde::extrapolate_line(0.2, 1.0, 0.3, 1.2, 0.4) == doctest::Approx(1.4).epsilon(1e-14));
  CHECK(vde::extrapolate_line(0.2, 3.0, 0.7, 3.0, 0.95) == 3.0);
  CHECK(code_of([] { (void)vde::extrapolate_line(0.3, 1.0, 0.3, 2.0, 0.5); }) ==
        vde::Errc::kCoincidentAnchors);
}

TEST_CASE("anchor history keeps the two most recent anchors by step") {
  vde::AnchorHistory h;
  CHECK(code_of([&] { (void)h.latest(); }) == vde::Errc::kInsufficientHistory);
  h.push(0, make(0.0, 1, 0, {1, 0}));
  CHECK(code_of([&] { (void)vde::extrapolate_coefficients(h, 0.5); }) ==
        vde::Errc::kInsufficientHistory);
  h.push(1, make(0.1, 2, 0, {0, 1}));
  h.push(3, make(0.3, 4, 0, {0, -1}));
  CHECK(h.size() == 2);
  CHECK(h.latest().step == 3);
  CHECK(h.previous().step == 1);
  const auto c = vde::extrapolate_coefficients(h, 0.4);
  CHECK(c.alpha == doctest::Approx(5.0));
  CHECK(code_of([&] { h.push(2, make(0.35, 1, 0, {1, 0})); }) == vde::Errc::kInvalidSchedule);
  CHECK(code_of([&] { h.push(4, make(0.3, 1, 0, {1, 0})); }) == vde::Errc::kCoincidentAnchors);
  h.clear();
  CHECK(h.size() == 0);
}

TEST_CASE("anchor order follows steps even when time decreases") {
  vde::AnchorHistory h;
  h.push(0, make(0.9, 1.0, 0.5, {1, 0}));
  h.push(1, make(0.8, 2.0, 0.5, {0, 1}));
  const auto c = vde::extrapolate_coefficients(h, 0.7);
  CHECK(c.alpha == doctest::Approx(3.0));
  const auto v = vde::estimate_velocity(Latent({1, 0}), 0.7, h);
  // Direction comes from step 1, the most recent anchor.
  CHECK(v[0] == doctest::Approx(3.0));
  CHECK(v[1] == doctest::Approx(0.5));
}

TEST_CASE("estimate_velocity examples") {
  SUBCASE("parallel-only history") {
    vde::AnchorHistory h;
    h.push(0, make(0.1, 1.0, 0.0, {0, 1}));
    h.push(1, make(0.2, 1.5, 0.0, {0, 1}));
    const Latent x({2, -1});
    const auto v = vde::estimate_velocity(x, 0.3, h);
    CHECK(v[0] == 2 * 2.0);
    CHECK(v[1] == 2 * -1.0);
  }
  SUBCASE("controlled field at a fixed latent") {
    const vde::ControlledField f(vde::PiecewisePolynomial::affine(0.5, 2.0),
                                 vde::PiecewisePolynomial::affine(1.0, -0.7), {1, -2, 0.5, 3});
    const Latent x({0.3, 0.8, -1.1, 0.2});
    vde::AnchorHistory h;
    h.push(4, vde::decompose(f.evaluate(x, 0.2), x, 0.2));
    h.push(5, vde::decompose(f.evaluate(x, 0.25), x, 0.25));
    for (double t : {0.3, 0.5, 0.9}) {
      const auto est = vde::estimate_velocity(x, t, h);
      const auto truth = f.evaluate(x, t);
      double err = 0, ref = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        err += (est[i] - truth[i]) * (est[i] - truth[i]);
        ref += truth[i] * truth[i];
      }
      CHECK(std::sqrt(err) <= 1e-8 * std::sqrt(ref));
    }
  }
  SUBCASE("at the latest anchor the estimate is that anchor's velocity") {
    vde::Rng rng(6);
    std::vector<double> xv(5), vv(5), wv(5);
    for (auto& e : xv) e = rng.normal();
    for (auto& e : vv) e = rng.normal();
    for (auto& e : wv) e = rng.normal();
    const Latent x(xv), w(wv);
    vde::AnchorHistory h;
    h.push(0, vde::decompose(vde::Velocity(wv), w, 0.4));
    const auto d = vde::decompose(vde::Velocity(vv), x, 0.5);
    h.push(1, d);
    const auto est = vde::estimate_velocity(x, 0.5, h);
    const auto back = vde::recompose(d, x);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(est[i] - back[i]) <= 1e-10);
  }
}

TEST_CASE("estimated velocity is positively homogeneous in x") {
  vde::Rng rng(15);
  vde::AnchorHistory h;
  h.push(0, make(0.2, 0.7, 0.4, {0.6, 0.8, 0.0}));
  h.push(1, make(0.3, 0.9, 0.3, {0.0, 0.6, 0.8}));
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> xv{rng.normal(), rng.normal(), rng.normal()};
    const double c = rng.uniform(0.1, 20.0);
    std::vector<double> cx(xv);
    for (double& e : cx) e *= c;
    const auto v = vde::estimate_velocity(Latent(xv), 0.45, h);
    const auto vc = vde::estimate_velocity(Latent(cx), 0.45, h);
    for (std::size_t i = 0; i < 3; ++i) CHECK(vc[i] == doctest::Approx(c * v[i]).epsilon(1e-13));
  }
}

TEST_CASE("stable-phase examples") {
  const std::vector<double> u{0.0, 1.0, 0.0};
  SUBCASE("globally affine, frozen direction") {
    std::vector<Decomposition> tr;
    for (int i = 0; i < 20; ++i) {
      const double t = i / 50.0;
      tr.push_back(make(t, 1.0 + 2.0 * t, 0.5 - 0.3 * t, u));
    }
    CHECK(vde::detect_stable_phase(tr) == std::optional<std::size_t>(0));
    CHECK(brute_force_stable(tr, 0.02, 0.99) == std::optional<std::size_t>(0));
  }
  SUBCASE("kink then affine") {
    // Strongly curved before t = 0.2, affine after.
    const vde::PiecewisePolynomial a({0.2}, {{1.0 + 200 * 0.04, -200 * 0.4, 200.0}, {0.8, 1.0}});
    std::vector<Decomposition> tr;
    for (int i = 0; i < 50; ++i) {
      const double t = i / 50.0;
      tr.push_back(make(t, a(t), 0.5, u));
    }
    const auto brute = brute_force_stable(tr, 0.02, 0.99);
    REQUIRE(brute.has_value());
    CHECK(*brute == 10);  // first step with t >= 0.2
    CHECK(vde::detect_stable_phase(tr) == brute);
  }
  SUBCASE("flipping direction") {
    std::vector<Decomposition> tr;
    for (int i = 0; i < 20; ++i) {
      const double t = i / 50.0;
      const double s = i % 2 ? -1.0 : 1.0;
      tr.push_back(make(t, 1.0 + t, 0.5, {0.0, s, 0.0}));
    }
    CHECK_FALSE(vde::detect_stable_phase(tr).has_value());
    CHECK_FALSE(brute_force_stable(tr, 0.02, 0.99).has_value());
  }
  CHECK(code_of([&] { (void)vde::detect_stable_phase(std::vector<Decomposition>(2)); }) ==
        vde::Errc::kInsufficientHistory);
  CHECK(code_of([] { vde::StablePhaseConfig{1.5, 0.99}.validate(); }) ==
        vde::Errc::kInvalidConfig);
}

TEST_CASE("near-zero coefficients are judged by absolute error") {
  CHECK(vde::coefficient_error(1e-10, 0.0) == doctest::Approx(0.1));
  CHECK(vde::coefficient_error(1.02, 1.0) == doctest::Approx(0.02));
  CHECK(vde::coefficient_error(-1.0, 1.0) == 2.0);
}

TEST_CASE("detector agrees with brute force and is monotone in its thresholds") {
  vde::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Decomposition> tr;
    const std::size_t n = 3 + rng.below(15);
    std::vector<double> u{1.0, 0.0};
    double alpha = rng.uniform(-2, 2), beta = rng.uniform(0, 1);
    for (std::size_t i = 0; i < n; ++i) {
      // Random walk in coefficients and angle with occasional large jumps.
      const double jump = rng.uniform() < 0.3 ? 0.5 : 0.01;
      alpha += jump * rng.normal();
      beta = std::abs(beta + jump * rng.normal());
      const double ang = std::atan2(u[1], u[0]) + jump * rng.normal();
      u = {std::cos(ang), std::sin(ang)};
      tr.push_back(make(static_cast<double>(i) / 50.0, alpha, beta, u));
    }
    const double eps = rng.uniform(0.005, 0.5);
    const double delta = rng.uniform(0.5, 0.999);
    const auto got = vde::detect_stable_phase(tr, {eps, delta});
    CHECK(got == brute_force_stable(tr, eps, delta));

    const auto looser_eps = vde::detect_stable_phase(tr, {std::min(0.99, eps * 2), delta});
    const auto looser_delta = vde::detect_stable_phase(tr, {eps, delta * 0.9});
    const auto rank = [&](const std::optional<std::size_t>& r) { return r ? *r : n; };
    CHECK(rank(looser_eps) <= rank(got));
    CHECK(rank(looser_delta) <= rank(got));
  }
}
