// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vde/bench/config.hpp"
#include "vde/metrics.hpp"
#include "vde/velocity_field.hpp"

namespace vde::bench {

// Builds the configured field for latents of `shape`. Throws kInvalidConfig
// when an MLP's dimension does not match.
std::unique_ptr<VelocityField> make_field(const FieldSpec& desc, const Shape& shape);

// x0 for a trajectory: shape.size() draws of Rng(seed).normal().
Latent initial_latent(std::uint64_t seed, const Shape& shape);

// Runs task(i) for i in [0, count) on up to `workers` threads (0 -> hardware
// concurrency). Exceptions escaping a task are rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task);

struct BenchRow {
  bool is_mean = false;
  std::size_t interval = 0;
  std::uint64_t seed = 0;   // unused on mean rows
  std::string status;       // "ok" | "failed: ..." | mean rows: "ok" or "partial k/N"
  std::uint64_t nfe = 0;
  bool has_report = false;
  RetentionReport report;
};

struct BenchTable {
  std::vector<BenchRow> rows;  // runs sorted by (n, seed), then one mean row per n
  std::size_t failures = 0;
};

// Every (n, seed) pair is compared against the full-step run of the same seed.
BenchTable run_bench(const ExperimentConfig& config);

// kind,n,seed,status,nfe,nfe_ratio,mse,rel_l2,psnr,ssim,cosine
std::string bench_to_csv(const BenchTable& table);
std::string bench_to_json(const BenchTable& table);

struct TraceTable {
  // Per-step means over seeds.
  std::vector<double> t, alpha, beta, u_cos;
  DynamicsSummary summary;  // pooled over seeds, skipping the first W steps
  std::size_t seeds = 0;
  std::size_t skip = 0;
  std::size_t failures = 0;
};

TraceTable run_trace(const ExperimentConfig& config);

// step,t,alpha,beta,u_cos followed by '#'-prefixed aggregate lines.
std::string trace_to_csv(const TraceTable& table);

}  // namespace vde::bench
