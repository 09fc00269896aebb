// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "vde/controlled_field.hpp"
#include "vde/gaussian_field.hpp"
#include "vde/io.hpp"
#include "vde/mlp_field.hpp"
#include "vde/rng.hpp"

namespace vde::bench {

std::unique_ptr<VelocityField> make_field(const FieldSpec& desc, const Shape& shape) {
  const std::size_t dim = shape.size();
  switch (desc.kind) {
    case FieldKind::kGaussian: {
      std::vector<double> mu = desc.mu1.size() == 1 ? std::vector<double>(dim, desc.mu1[0])
                                                    : desc.mu1;
      return std::make_unique<GaussianAnalyticField>(std::move(mu), desc.s1);
    }
    case FieldKind::kControlled: {
      std::vector<double> w = desc.w;
      if (w.empty()) {
        w.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) w[i] = static_cast<double>(i + 1);
      }
      return std::make_unique<ControlledField>(PiecewisePolynomial(desc.a.breaks, desc.a.pieces),
                                               PiecewisePolynomial(desc.b.breaks, desc.b.pieces),
                                               std::move(w));
    }
    case FieldKind::kMlp: {
      auto field = std::make_unique<MlpField>(load_weights(desc.weights_path));
      if (field->dim() != dim) {
        fail(Errc::kInvalidConfig, "weights in " + desc.weights_path + " are for dimension " +
                                       std::to_string(field->dim()) + " but shape has " +
                                       std::to_string(dim) + " entries");
      }
      return field;
    }
  }
  fail(Errc::kInvalidConfig, "unknown field kind");
}

Latent initial_latent(std::uint64_t seed, const Shape& shape) {
  Rng rng(seed);
  std::vector<double> data(shape.size());
  for (double& v : data) v = rng.normal();
  return Latent(shape, std::move(data));
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
}

namespace {

std::string failure_status(const std::exception& e) {
  std::string msg = e.what();
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return "failed: " + msg;
}

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace

BenchTable run_bench(const ExperimentConfig& config) {
  const Shape shape = config.latent_shape();
  const TimeGrid grid = config.grid();
  const auto field = make_field(config.field, shape);
  std::vector<SamplingSchedule> schedules;
  for (std::size_t n : config.intervals) {
    schedules.push_back(plan_schedule(config.steps, config.warmup, n, config.calls_per_step));
  }

  const std::size_t nseeds = config.seeds;
  const std::size_t nints = config.intervals.size();
  std::vector<BenchRow> runs(nseeds * nints);
  SamplerOptions full_opts;
  full_opts.calls_per_step = config.calls_per_step;

  parallel_for(nseeds, config.workers, [&](std::size_t s) {
    const std::uint64_t seed = config.base_seed + s;
    const Latent x0 = initial_latent(seed, shape);
    std::optional<SampleResult> baseline;
    std::string baseline_error;
    try {
      baseline.emplace(sample_full(*field, x0, grid, full_opts));
    } catch (const std::exception& e) {
      baseline_error = failure_status(e);
    }
    for (std::size_t k = 0; k < nints; ++k) {
      BenchRow& row = runs[k * nseeds + s];
      row.interval = config.intervals[k];
      row.seed = seed;
      row.nfe = schedules[k].nfe();
      if (!baseline) {
        row.status = baseline_error;
        continue;
      }
      try {
        const SampleResult vde =
            sample_vde(*field, x0, grid, schedules[k], config.mode, config.stable);
        row.nfe = vde.nfe;
        row.report = compare_to_baseline(vde.final_state, baseline->final_state, baseline->nfe,
                                         vde.nfe);
        row.status = "ok";
        row.has_report = true;
      } catch (const std::exception& e) {
        row.status = failure_status(e);
      }
    }
  });

  BenchTable table;
  for (std::size_t k = 0; k < nints; ++k) {
    BenchRow mean;
    mean.is_mean = true;
    mean.interval = config.intervals[k];
    std::size_t ok = 0;
    bool have_psnr = true, have_ssim = true;
    double psnr_sum = 0.0, ssim_sum = 0.0, nfe_sum = 0.0;
    for (std::size_t s = 0; s < nseeds; ++s) {
      const BenchRow& r = runs[k * nseeds + s];
      table.rows.push_back(r);
      if (r.status != "ok") {
        ++table.failures;
        continue;
      }
      ++ok;
      nfe_sum += static_cast<double>(r.nfe);
      mean.report.mse += r.report.mse;
      mean.report.rel_l2 += r.report.rel_l2;
      mean.report.cosine += r.report.cosine;
      have_psnr = have_psnr && r.report.psnr.has_value();
      have_ssim = have_ssim && r.report.ssim.has_value();
      if (r.report.psnr) psnr_sum += *r.report.psnr;
      if (r.report.ssim) ssim_sum += *r.report.ssim;
    }
    if (ok > 0) {
      mean.has_report = true;
      const auto n = static_cast<double>(ok);
      mean.report.mse /= n;
      mean.report.rel_l2 /= n;
      mean.report.cosine /= n;
      // Ratio of total work, so dynamic runs with varying NFE are weighted fairly.
      mean.report.nfe_ratio =
          static_cast<double>(config.steps * config.calls_per_step) * n / nfe_sum;
      mean.nfe = static_cast<std::uint64_t>(std::llround(nfe_sum / n));
      if (have_psnr) mean.report.psnr = psnr_sum / n;
      if (have_ssim) mean.report.ssim = ssim_sum / n;
    }
    mean.status = ok == nseeds ? "ok" : "partial " + std::to_string(ok) + "/" +
                                            std::to_string(nseeds);
    mean.nfe = ok > 0 ? mean.nfe : schedules[k].nfe();
    table.rows.push_back(mean);
  }
  // Runs grouped by n above; move the mean rows after all runs.
  std::stable_partition(table.rows.begin(), table.rows.end(),
                        [](const BenchRow& r) { return !r.is_mean; });
  return table;
}

std::string bench_to_csv(const BenchTable& table) {
  std::string out = "kind,n,seed,status,nfe,nfe_ratio,mse,rel_l2,psnr,ssim,cosine\n";
  for (const BenchRow& r : table.rows) {
    out += r.is_mean ? "mean" : "run";
    out += ',' + std::to_string(r.interval);
    out += ',' + (r.is_mean ? std::string() : std::to_string(r.seed));
    out += ',' + r.status;
    out += ',' + std::to_string(r.nfe);
    if (r.has_report) {
      out += ',' + format_real(r.report.nfe_ratio);
      out += ',' + format_real(r.report.mse);
      out += ',' + format_real(r.report.rel_l2);
      out += ',' + optional_real(r.report.psnr);
      out += ',' + optional_real(r.report.ssim);
      out += ',' + format_real(r.report.cosine);
    } else {
      out += ",,,,,,";
    }
    out += '\n';
  }
  return out;
}

std::string bench_to_json(const BenchTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BenchRow& r : table.rows) {
    nlohmann::ordered_json j;
    j["kind"] = r.is_mean ? "mean" : "run";
    j["n"] = r.interval;
    j["seed"] = r.is_mean ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.seed);
    j["status"] = r.status;
    j["nfe"] = r.nfe;
    j["report"] = r.has_report ? nlohmann::ordered_json::parse(r.report.to_json())
                               : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + "\n";
}

TraceTable run_trace(const ExperimentConfig& config) {
  const Shape shape = config.latent_shape();
  const TimeGrid grid = config.grid();
  const auto field = make_field(config.field, shape);
  const std::size_t nseeds = config.seeds;
  std::vector<std::optional<ComponentDynamics>> per_seed(nseeds);
  parallel_for(nseeds, config.workers, [&](std::size_t s) {
    try {
      per_seed[s] = record_component_dynamics(
          *field, initial_latent(config.base_seed + s, shape), grid);
    } catch (const Error&) {
      per_seed[s].reset();
    }
  });

  TraceTable table;
  table.skip = config.warmup;
  const std::size_t steps = grid.size();
  table.t.assign(grid.times().begin(), grid.times().end());
  table.alpha.assign(steps, 0.0);
  table.beta.assign(steps, 0.0);
  table.u_cos.assign(steps, 0.0);
  ComponentDynamics pooled;
  for (const auto& d : per_seed) {
    if (!d) {
      ++table.failures;
      continue;
    }
    ++table.seeds;
    for (std::size_t i = 0; i < steps; ++i) {
      table.alpha[i] += d->steps[i].alpha;
      table.beta[i] += d->steps[i].beta;
      table.u_cos[i] += d->steps[i].u_cos;
    }
    pooled.steps.insert(pooled.steps.end(), d->steps.begin(), d->steps.end());
  }
  if (table.seeds > 0) {
    const auto n = static_cast<double>(table.seeds);
    for (std::size_t i = 0; i < steps; ++i) {
      table.alpha[i] /= n;
      table.beta[i] /= n;
      table.u_cos[i] /= n;
    }
  }
  table.summary = pooled.summarize(table.skip);
  return table;
}

std::string trace_to_csv(const TraceTable& table) {
  std::string out = "step,t,alpha,beta,u_cos\n";
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    out += std::to_string(i);
    out += ',' + format_real(table.t[i]);
    out += ',' + format_real(table.alpha[i]);
    out += ',' + format_real(table.beta[i]);
    out += ',' + (std::isnan(table.u_cos[i]) ? std::string() : format_real(table.u_cos[i]));
    out += '\n';
  }
  out += "# seeds=" + std::to_string(table.seeds) + "\n";
  out += "# failed_seeds=" + std::to_string(table.failures) + "\n";
  out += "# skip=" + std::to_string(table.skip) + "\n";
  out += "# alpha_error_pct=" + format_real(table.summary.alpha_error_pct) + "\n";
  out += "# beta_error_pct=" + format_real(table.summary.beta_error_pct) + "\n";
  out += "# direction_error_pct=" + format_real(table.summary.direction_error_pct) + "\n";
  out += "# mean_u_cos=" + format_real(table.summary.mean_u_cos) + "\n";
  return out;
}

}  // namespace vde::bench
