// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "vde/bench/commands.hpp"
#include "vde/bench/config.hpp"
#include "vde/bench/experiment.hpp"
#include "vde/controlled_field.hpp"
#include "vde/decomposition.hpp"
#include "vde/estimator.hpp"
#include "vde/gaussian_field.hpp"
#include "vde/io.hpp"
#include "vde/metrics.hpp"
#include "vde/rng.hpp"
#include "vde/sampler.hpp"
#include "vde/schedule.hpp"
#include "vde/trainer.hpp"

namespace fs = std::filesystem;
using vde::Latent;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs <= limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %d %s: %s (%.3f s, limit %g s)%s\n", pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs, limit_seconds, in_time ? "" : " [over time]");
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Latent grid_noise(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  return vde::bench::initial_latent(seed, vde::Shape::grid(rows, cols));
}

// Two-step extrapolation error of coefficient k at step i from steps i-2, i-1,
// written out directly from the secant formula.
double secant_error(double t0, double c0, double t1, double c1, double t2, double c2) {
  const double predicted = c0 + (c1 - c0) / (t1 - t0) * (t2 - t0);
  return std::abs(predicted - c2) / std::max(std::abs(c2), 1e-9);
}

Outcome nfe_golden() {
  struct Case {
    std::size_t T, W, n, calls;
    std::uint64_t nfe;
  };
  const Case cases[] = {{50, 7, 2, 1, 22}, {50, 7, 3, 1, 18}, {50, 7, 4, 1, 16},
                        {50, 11, 2, 2, 48}, {50, 11, 5, 2, 36}};
  Outcome o;
  for (const auto& c : cases) {
    const auto got = vde::plan_schedule(c.T, c.W, c.n, c.calls).nfe();
    o.detail += fmt("(%zu,%zu,%zu,x%zu)=%llu ", c.T, c.W, c.n, c.calls,
                    static_cast<unsigned long long>(got));
    o.pass = o.pass && got == c.nfe;
  }
  return o;
}

Outcome decomposition_round_trip() {
  vde::Rng rng(20240101);
  double worst_rt = 0, worst_orth = 0, worst_pyth = 0;
  for (std::size_t dim : {2u, 16u, 4096u}) {
    std::vector<double> xv(dim), vv(dim);
    for (int trial = 0; trial < 1000; ++trial) {
      for (auto& e : xv) e = rng.normal();
      for (auto& e : vv) e = rng.normal();
      const Latent x(xv);
      const vde::Velocity v(vv);
      const auto d = vde::decompose(v, x, 0.5);
      const auto back = vde::recompose(d, x);
      double err = 0, vn = 0, xn = 0, ux = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        err += (back[i] - vv[i]) * (back[i] - vv[i]);
        vn += vv[i] * vv[i];
        xn += xv[i] * xv[i];
        ux += d.u[i] * xv[i];
      }
      worst_rt = std::max(worst_rt, std::sqrt(err / vn));
      worst_orth = std::max(worst_orth, std::abs(ux) / std::sqrt(xn));
      const double rhs = (d.alpha * d.alpha + d.beta * d.beta) * xn;
      worst_pyth = std::max(worst_pyth, std::abs(vn - rhs) / vn);
    }
  }
  return {worst_rt <= 1e-10 && worst_orth <= 1e-8 && worst_pyth <= 1e-9,
          fmt("3000 pairs; worst round-trip %.2e, |u.x|/|x| %.2e, Pythagoras %.2e", worst_rt,
              worst_orth, worst_pyth)};
}

Outcome exactness_oracle() {
  // Affine a(t) with b(t) = 0: the velocity is a(t) x, its coefficient is
  // reproduced exactly by the secant, so estimated steps match full ones.
  const vde::ControlledField field(vde::PiecewisePolynomial::affine(-0.6, 1.8),
                                   vde::PiecewisePolynomial::constant(0.0),
                                   {1, 2, 3, 4, 5, 6, 7, 8});
  const auto grid = vde::TimeGrid::uniform(50);
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto x0 = vde::bench::initial_latent(seed, vde::Shape::flat(8));
    const auto full = vde::sample_full(field, x0, grid);
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto r = vde::sample_vde(field, x0, grid, vde::plan_schedule(50, 7, n));
      worst = std::max(worst, vde::rel_l2(r.final_state, full.final_state));
    }
  }
  return {worst <= 1e-8, fmt("n=1..5, 4 seeds; worst relative final-state error %.2e", worst)};
}

Outcome extrapolation_statistics() {
  const vde::GaussianAnalyticField field(std::vector<double>(64, 1.0), 1.0);
  const auto grid = vde::TimeGrid::uniform(50);
  constexpr std::size_t kSkip = 7;
  double a_sum = 0, b_sum = 0, cos_sum = 0;
  std::size_t coef_n = 0, cos_n = 0;
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    const auto run = vde::sample_full(field, grid_noise(seed, 8, 8), grid);
    const auto& rows = run.trace.rows;
    for (std::size_t i = kSkip + 2; i < rows.size(); ++i) {
      const auto &r0 = rows[i - 2], &r1 = rows[i - 1], &r2 = rows[i];
      a_sum += secant_error(r0.t, r0.alpha, r1.t, r1.alpha, r2.t, r2.alpha);
      b_sum += secant_error(r0.t, r0.beta, r1.t, r1.beta, r2.t, r2.beta);
      ++coef_n;
    }
    for (std::size_t i = kSkip + 1; i < rows.size(); ++i) {
      cos_sum += rows[i].u_cos;
      ++cos_n;
    }
  }
  const double a_pct = 100 * a_sum / static_cast<double>(coef_n);
  const double b_pct = 100 * b_sum / static_cast<double>(coef_n);
  const double cos_mean = cos_sum / static_cast<double>(cos_n);
  return {a_pct < 5.0 && b_pct < 5.0 && cos_mean > 0.99,
          fmt("32 seeds, steps >= 7: alpha %.2f%%, beta %.2f%%, mean cos %.6f", a_pct, b_pct,
              cos_mean)};
}

Outcome fidelity_tradeoff() {
  vde::bench::ExperimentConfig cfg;
  cfg.intervals = {1, 2, 3, 4, 5};
  cfg.seeds = 100;
  const auto table = vde::bench::run_bench(cfg);
  std::vector<double> means;
  for (const auto& row : table.rows) {
    if (row.is_mean) means.push_back(row.report.rel_l2);
  }
  if (table.failures != 0 || means.size() != 5) return {false, "bench runs failed"};
  std::size_t violations = 0;
  bool small = true;
  for (std::size_t k = 0; k + 1 < means.size(); ++k) {
    if (means[k + 1] < means[k]) {
      ++violations;
      small = small && (means[k] - means[k + 1]) / means[k] <= 0.10;
    }
  }
  std::string detail = "mean rel_l2 n=1..5:";
  for (double m : means) detail += fmt(" %.4f", m);
  detail += fmt("; monotonicity violations %zu", violations);
  return {means[1] <= 0.02 && violations <= 1 && small, detail};
}

Outcome learned_field() {
  const auto trained = vde::train_flow_matching({}, vde::TrainerConfig{});
  const auto& field = trained.field;
  const auto grid = vde::TimeGrid::uniform(50);
  const auto schedule = vde::plan_schedule(50, 7, 2);
  double sum = 0;
  bool nfe_ok = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x0 = vde::bench::initial_latent(seed, vde::Shape::flat(2));
    const auto full = vde::sample_full(field, x0, grid);
    field.reset_eval_count();
    const auto fast = vde::sample_vde(field, x0, grid, schedule);
    nfe_ok = nfe_ok && fast.nfe == 22 && field.eval_count() == 22;
    sum += vde::rel_l2(fast.final_state, full.final_state);
  }
  const double mean = sum / 100.0;
  return {mean <= 0.05 && nfe_ok && trained.report.final_loss < trained.report.initial_loss,
          fmt("two-moons loss %.4f -> %.4f; mean rel_l2 %.4f over 100; NFE %s",
              trained.report.initial_loss, trained.report.final_loss, mean,
              nfe_ok ? "22" : "mismatch")};
}

// Brute-force scan of the stability rule over a trace.
std::optional<std::size_t> brute_stable(const std::vector<vde::Decomposition>& tr) {
  for (std::size_t i = 0; i + 2 < tr.size(); ++i) {
    const auto &a = tr[i], &b = tr[i + 1], &c = tr[i + 2];
    const double ea = secant_error(a.t, a.alpha, b.t, b.alpha, c.t, c.alpha);
    const double eb = secant_error(a.t, a.beta, b.t, b.beta, c.t, c.beta);
    double cosine = 0;
    for (std::size_t k = 0; k < a.u.size(); ++k) cosine += a.u[k] * b.u[k];
    if (std::max(ea, eb) < 0.02 && cosine > 0.99) return i;
  }
  return std::nullopt;
}

Outcome stable_phase() {
  const auto grid = vde::TimeGrid::uniform(50);
  // Full-step decompositions of a controlled field along a fixed latent, so
  // the direction stays frozen and only the coefficients vary.
  auto trace_of = [&](const vde::ControlledField& f) {
    const Latent x({0.4, -1.2, 0.7});
    std::vector<vde::Decomposition> tr;
    for (std::size_t i = 0; i < 30; ++i) tr.push_back(vde::decompose(f.evaluate(x, grid[i]), x, grid[i]));
    return tr;
  };
  const vde::ControlledField affine(vde::PiecewisePolynomial::affine(1.0, 2.0),
                                    vde::PiecewisePolynomial::affine(0.5, -0.3), {1, 0, 0});
  const vde::ControlledField kink(
      vde::PiecewisePolynomial({0.2}, {{9.0, -80.0, 200.0}, {0.8, 1.0}}),
      vde::PiecewisePolynomial::constant(0.5), {1, 0, 0});
  std::vector<vde::Decomposition> flip;
  for (std::size_t i = 0; i < 30; ++i) {
    const double s = i % 2 ? -1.0 : 1.0;
    flip.push_back({1.0 + grid[i], 0.5, {0.0, s, 0.0}, grid[i]});
  }

  const auto a_tr = trace_of(affine), k_tr = trace_of(kink);
  const auto a = vde::detect_stable_phase(a_tr);
  const auto k = vde::detect_stable_phase(k_tr);
  const auto f = vde::detect_stable_phase(flip);
  const bool ok = a == std::optional<std::size_t>(0) && a == brute_stable(a_tr) &&
                  k == std::optional<std::size_t>(10) && k == brute_stable(k_tr) &&
                  !f.has_value() && !brute_stable(flip).has_value();
  auto show = [](const std::optional<std::size_t>& r) {
    return r ? std::to_string(*r) : std::string("none");
  };
  return {ok, "affine " + show(a) + ", kink at t=0.2 " + show(k) + ", flipping " + show(f)};
}

Outcome bench_determinism() {
  const fs::path root = fs::temp_directory_path() / ("vde_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::ostringstream sink;
  vde::bench::ExperimentConfig cfg;
  cfg.intervals = {1, 2, 3};
  cfg.seeds = 8;
  cfg.base_seed = 42;
  cfg.output_dir = (root / "seed").string();
  if (vde::bench::cmd_bench(cfg, sink) != 0) return {false, "initial bench failed"};

  const auto manifest = vde::read_file(root / "seed" / "run.json");
  std::string csv[2];
  for (int k = 0; k < 2; ++k) {
    auto replay = vde::bench::parse_config(manifest, "run.json");
    replay.output_dir = (root / ("replay" + std::to_string(k))).string();
    replay.workers = k == 0 ? 1 : 0;  // worker count must not matter
    if (vde::bench::cmd_bench(replay, sink) != 0) return {false, "replay failed"};
    csv[k] = vde::read_file(fs::path(replay.output_dir) / "bench.csv");
  }
  const auto original = vde::read_file(root / "seed" / "bench.csv");
  fs::remove_all(root);
  return {csv[0] == csv[1] && csv[0] == original,
          fmt("two replays of run.json: %s (%zu bytes)",
              csv[0] == csv[1] ? "byte-identical" : "differ", csv[0].size())};
}

Outcome metric_self_tests() {
  std::vector<double> v(64);
  vde::Rng rng(5);
  for (auto& e : v) e = rng.normal();
  const Latent a(vde::Shape::grid(8, 8), v);
  std::vector<double> neg(v), off1(v), off2(v);
  for (auto& e : neg) e = -e;
  const double e1 = 0.05, e2 = 0.05 * std::sqrt(2.0);
  for (std::size_t i = 0; i < 64; ++i) {
    off1[i] += i % 2 ? e1 : -e1;
    off2[i] += i % 2 ? e2 : -e2;
  }
  const double s = vde::ssim(a, a);
  const double p = vde::psnr(a, a, 1.0);
  const double p1 = vde::psnr(Latent(a.shape(), off1), a, 1.0);
  const double p2 = vde::psnr(Latent(a.shape(), off2), a, 1.0);
  const double drop = p1 - p2;
  const double c = vde::cosine(a, Latent(a.shape(), neg));
  const bool ok = std::abs(s - 1.0) <= 1e-12 && p == vde::kPsnrCap &&
                  std::abs(drop - 3.0103) <= 1e-4 && std::abs(drop - 10 * std::log10(2.0)) <= 1e-6 &&
                  std::abs(c + 1.0) <= 1e-15;
  return {ok, fmt("ssim(a,a)=%.15f, psnr cap %.1f dB, mse doubling -%.6f dB, cos(a,-a)=%.15f", s,
                  p, drop, c)};
}

}  // namespace

int main() {
  report(1, "NFE golden values", 0.001, nfe_golden);
  report(2, "decomposition round-trip", 1.0, decomposition_round_trip);
  report(3, "exactness oracle", 1.0, exactness_oracle);
  report(4, "extrapolation-error statistics", 5.0, extrapolation_statistics);
  report(5, "fidelity/efficiency trade-off", 30.0, fidelity_tradeoff);
  report(6, "learned-field end-to-end", 300.0, learned_field);
  report(7, "stable-phase detector", 1.0, stable_phase);
  report(8, "bench determinism", 60.0, bench_determinism);
  report(9, "metric self-tests", 1.0, metric_self_tests);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
