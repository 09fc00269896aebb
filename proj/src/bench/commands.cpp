// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/bench/commands.hpp"

#include <filesystem>
#include <ostream>

#include "vde/bench/experiment.hpp"
#include "vde/io.hpp"
#include "vde/simd/kernels.hpp"

namespace vde::bench {
namespace {

std::filesystem::path prepare_output(const ExperimentConfig& config, std::string_view command) {
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::kIo, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "run.json", run_manifest(config, command));
  return dir;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

ExperimentConfig resolve(const ExperimentConfig& config) {
  ExperimentConfig out = config;
  if (config.simd != "auto") {
    const auto isa = simd::parse_isa(config.simd);
    if (!isa || !simd::select(*isa)) {
      fail(Errc::kInvalidConfig, "simd '" + config.simd + "' is not available on this machine");
    }
  }
  out.simd = std::string(simd::isa_name(simd::active().isa));
  return out;
}

int cmd_train(const TrainOptions& options, std::ostream& out) {
  require(!options.output.empty(), Errc::kInvalidConfig, "train needs an output path");
  const TrainResult result = train_flow_matching(options.dataset, options.trainer);
  save_weights(result.field, options.output);
  const TrainReport& r = result.report;
  out << "dataset " << dataset_name(options.dataset.kind) << ", " << r.iterations
      << " iterations\n";
  out << "loss initial " << format_real(r.initial_loss) << " final " << format_real(r.final_loss)
      << " held-out " << format_real(r.heldout_loss) << " target variance "
      << format_real(r.target_variance) << "\n";
  out << "wrote " << options.output << "\n";
  return 0;
}

int cmd_sample(const ExperimentConfig& input, SampleMethod method, std::ostream& out) {
  const ExperimentConfig config = resolve(input);
  const std::filesystem::path dir = prepare_output(config, "sample");
  const Shape shape = config.latent_shape();
  const TimeGrid grid = config.grid();
  const auto field = make_field(config.field, shape);
  SamplerOptions full_opts;
  full_opts.calls_per_step = config.calls_per_step;

  int status = 0;
  auto emit = [&](const std::string& stem, const std::string& label, auto&& run) {
    try {
      const SampleResult r = run();
      write_file(dir / (stem + ".json"), r.to_json());
      write_file(dir / (stem + ".csv"), r.trace.to_csv());
      out << label << ": NFE " << r.nfe << " (" << fixed(r.trace.wall_seconds * 1e3, 3)
          << " ms)\n";
    } catch (const NonFiniteStateError& e) {
      out << label << ": failed: " << e.what() << "\n";
      status = 1;
    }
  };

  for (std::size_t s = 0; s < config.seeds; ++s) {
    const std::uint64_t seed = config.base_seed + s;
    const Latent x0 = initial_latent(seed, shape);
    const std::string tag = "seed" + std::to_string(seed);
    if (method != SampleMethod::kVde) {
      emit("full_" + tag, tag + " full",
           [&] { return sample_full(*field, x0, grid, full_opts); });
    }
    if (method != SampleMethod::kFull) {
      for (std::size_t n : config.intervals) {
        const SamplingSchedule schedule =
            plan_schedule(config.steps, config.warmup, n, config.calls_per_step);
        emit("vde_n" + std::to_string(n) + "_" + tag,
             tag + " vde n=" + std::to_string(n) + " [" + schedule.compact() + "]",
             [&] { return sample_vde(*field, x0, grid, schedule, config.mode, config.stable); });
      }
    }
  }
  return status;
}

int cmd_bench(const ExperimentConfig& input, std::ostream& out) {
  const ExperimentConfig config = resolve(input);
  const std::filesystem::path dir = prepare_output(config, "bench");
  const BenchTable table = run_bench(config);
  write_file(dir / "bench.csv", bench_to_csv(table));
  write_file(dir / "bench.json", bench_to_json(table));
  for (const BenchRow& r : table.rows) {
    if (!r.is_mean) continue;
    out << "n=" << r.interval << " NFE " << r.nfe << " ratio "
        << fixed(r.report.nfe_ratio, 3) << " mean rel_l2 " << fixed(r.report.rel_l2, 6)
        << " (" << r.status << ")\n";
  }
  out << "wrote " << (dir / "bench.csv").string() << "\n";
  return table.failures == 0 ? 0 : 1;
}

int cmd_trace(const ExperimentConfig& input, std::ostream& out) {
  const ExperimentConfig config = resolve(input);
  const std::filesystem::path dir = prepare_output(config, "trace");
  const TraceTable table = run_trace(config);
  write_file(dir / "trace.csv", trace_to_csv(table));
  const DynamicsSummary& s = table.summary;
  out << "alpha error " << fixed(s.alpha_error_pct, 2) << "%\n";
  out << "beta error " << fixed(s.beta_error_pct, 2) << "%\n";
  out << "direction error " << fixed(s.direction_error_pct, 2) << "% (mean cos "
      << fixed(s.mean_u_cos, 6) << ")\n";
  out << "wrote " << (dir / "trace.csv").string() << "\n";
  return table.failures == 0 ? 0 : 1;
}

int cmd_nfe(std::size_t steps, std::size_t warmup, std::size_t interval,
            std::size_t calls_per_step, bool as_json, std::ostream& out) {
  const SamplingSchedule s = plan_schedule(steps, warmup, interval, calls_per_step);
  if (as_json) {
    out << s.to_json() << "\n";
  } else {
    out << s.compact() << "\n";
    out << "NFE " << s.nfe() << "\n";
  }
  return 0;
}

}  // namespace vde::bench
