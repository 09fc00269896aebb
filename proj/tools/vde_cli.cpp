// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

// vde: train toy velocity models, sample with full steps or velocity
// decomposition estimates, sweep anchor intervals, and dump component traces.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vde/bench/commands.hpp"
#include "vde/io.hpp"

namespace {

using vde::bench::ExperimentConfig;

// Flags left unset keep the config-file value.
struct Overrides {
  std::string config_path;
  std::optional<std::string> field;
  std::optional<std::size_t> steps, warmup, calls, seeds, workers;
  std::vector<std::size_t> intervals, shape;
  std::optional<std::uint64_t> base_seed;
  std::optional<std::string> mode, spacing, output, simd;
  std::optional<double> shift, epsilon, delta, mu1, s1;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "JSON config or a previous run.json");
    app->add_option("--field", field, "gaussian | controlled | mlp:<weights.json>");
    app->add_option("-T,--steps", steps, "Total sampling steps");
    app->add_option("-W,--warmup", warmup, "Leading full steps");
    app->add_option("-n,--interval", intervals, "Anchor interval(s), e.g. 1,2,3")
        ->delimiter(',');
    app->add_option("--calls", calls, "Model calls per full step (NFE multiplier)");
    app->add_option("--seeds", seeds, "Number of trajectories");
    app->add_option("--base-seed", base_seed, "Seed of the first trajectory (env VDE_SEED)");
    app->add_option("--shape", shape, "Latent shape: d or h,w")->delimiter(',');
    app->add_option("--mode", mode, "fixed | dynamic");
    app->add_option("--spacing", spacing, "uniform | shifted");
    app->add_option("--shift", shift, "Time shift for shifted spacing");
    app->add_option("--epsilon", epsilon, "Stable-phase coefficient tolerance");
    app->add_option("--delta", delta, "Stable-phase direction cosine threshold");
    app->add_option("--mu1", mu1, "Gaussian field: target mean (every coordinate)");
    app->add_option("--s1", s1, "Gaussian field: target standard deviation");
    app->add_option("-o,--out", output, "Output directory");
    app->add_option("--workers", workers, "Worker threads (0 = all cores)");
    app->add_option("--simd", simd, "auto | scalar | avx2 | neon");
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg;
    std::string text;
    std::string origin = "flags";
    if (!config_path.empty()) {
      text = vde::read_file(config_path);
      cfg = vde::bench::parse_config(text, config_path);
      origin = config_path;
    }
    if (const char* env = std::getenv("VDE_SEED")) {
      try {
        cfg.base_seed = std::stoull(env);
      } catch (const std::exception&) {
        vde::fail(vde::Errc::kInvalidConfig, std::string("VDE_SEED is not an integer: ") + env);
      }
    }
    if (field) vde::bench::apply_field_label(cfg.field, *field);
    if (steps) cfg.steps = *steps;
    if (warmup) cfg.warmup = *warmup;
    if (!intervals.empty()) cfg.intervals = intervals;
    if (calls) cfg.calls_per_step = *calls;
    if (seeds) cfg.seeds = *seeds;
    if (base_seed) cfg.base_seed = *base_seed;
    if (!shape.empty()) cfg.shape = shape;
    if (mode) {
      if (*mode == "fixed") {
        cfg.mode = vde::VdeMode::kFixedWarmup;
      } else if (*mode == "dynamic") {
        cfg.mode = vde::VdeMode::kDynamic;
      } else {
        vde::fail(vde::Errc::kInvalidConfig, "--mode must be fixed or dynamic");
      }
    }
    if (spacing) {
      if (*spacing == "uniform") {
        cfg.spacing = vde::Spacing::kUniform;
      } else if (*spacing == "shifted") {
        cfg.spacing = vde::Spacing::kShifted;
      } else {
        vde::fail(vde::Errc::kInvalidConfig, "--spacing must be uniform or shifted");
      }
    }
    if (shift) cfg.shift = *shift;
    if (epsilon) cfg.stable.epsilon = *epsilon;
    if (delta) cfg.stable.delta = *delta;
    if (mu1) cfg.field.mu1 = {*mu1};
    if (s1) cfg.field.s1 = *s1;
    if (output) cfg.output_dir = *output;
    if (workers) cfg.workers = *workers;
    if (simd) cfg.simd = *simd;
    // Flag values are re-checked without line info; file values were checked on parse.
    vde::bench::validate_config(cfg, {}, origin);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Velocity decomposition and estimation sampler"};
  app.require_subcommand(1);

  vde::bench::TrainOptions train;
  std::string dataset = "two-moons";
  std::string activation = "tanh";
  std::vector<double> point{2.0, 2.0};
  auto* train_cmd = app.add_subcommand("train", "Train an MLP velocity field on a toy dataset");
  train_cmd->add_option("--dataset", dataset, "two-moons | gaussian-ring | checkerboard | point-mass")
      ->capture_default_str();
  train_cmd->add_option("--point", point, "Point-mass location x,y")->delimiter(',')->expected(2);
  train_cmd->add_option("--iterations", train.trainer.iterations)->capture_default_str();
  train_cmd->add_option("--batch", train.trainer.batch_size)->capture_default_str();
  train_cmd->add_option("--lr", train.trainer.learning_rate)->capture_default_str();
  train_cmd->add_option("--hidden", train.trainer.hidden, "Hidden widths, e.g. 64,64")
      ->delimiter(',');
  train_cmd->add_option("--activation", activation, "tanh | gelu | relu")->capture_default_str();
  train_cmd->add_option("--fourier-pairs", train.trainer.time_features.fourier_pairs)
      ->capture_default_str();
  train_cmd->add_option("--seed", train.trainer.seed)->capture_default_str();
  train_cmd->add_option("-o,--out", train.output, "Weight file to write")->required();

  Overrides sample_flags, bench_flags, trace_flags;
  std::string method = "both";
  auto* sample_cmd = app.add_subcommand("sample", "Sample trajectories and write results");
  sample_flags.attach(sample_cmd);
  sample_cmd->add_option("--method", method, "full | vde | both")->capture_default_str();
  auto* bench_cmd = app.add_subcommand("bench", "Sweep anchor intervals against full sampling");
  bench_flags.attach(bench_cmd);
  auto* trace_cmd = app.add_subcommand("trace", "Record decomposed velocity dynamics");
  trace_flags.attach(trace_cmd);

  std::size_t nfe_steps = 50, nfe_warmup = 7, nfe_interval = 2, nfe_calls = 1;
  bool nfe_json = false;
  auto* nfe_cmd = app.add_subcommand("nfe", "Print a sampling schedule and its NFE");
  nfe_cmd->add_option("-T,--steps", nfe_steps)->capture_default_str();
  nfe_cmd->add_option("-W,--warmup", nfe_warmup)->capture_default_str();
  nfe_cmd->add_option("-n,--interval", nfe_interval)->capture_default_str();
  nfe_cmd->add_option("--calls", nfe_calls)->capture_default_str();
  nfe_cmd->add_flag("--json", nfe_json, "Emit the schedule as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      train.dataset.kind = vde::parse_dataset(dataset);
      train.dataset.point = {point[0], point[1]};
      train.trainer.activation = vde::parse_activation(activation);
      return vde::bench::cmd_train(train, std::cout);
    }
    if (sample_cmd->parsed()) {
      vde::bench::SampleMethod m = vde::bench::SampleMethod::kBoth;
      if (method == "full") {
        m = vde::bench::SampleMethod::kFull;
      } else if (method == "vde") {
        m = vde::bench::SampleMethod::kVde;
      } else if (method != "both") {
        vde::fail(vde::Errc::kInvalidConfig, "--method must be full, vde or both");
      }
      return vde::bench::cmd_sample(sample_flags.build(), m, std::cout);
    }
    if (bench_cmd->parsed()) return vde::bench::cmd_bench(bench_flags.build(), std::cout);
    if (trace_cmd->parsed()) return vde::bench::cmd_trace(trace_flags.build(), std::cout);
    if (nfe_cmd->parsed()) {
      return vde::bench::cmd_nfe(nfe_steps, nfe_warmup, nfe_interval, nfe_calls, nfe_json,
                                 std::cout);
    }
  } catch (const vde::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
