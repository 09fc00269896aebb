// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "vde/bench/config.hpp"
#include "vde/trainer.hpp"

namespace vde::bench {

struct TrainOptions {
  ToyDataset dataset;
  TrainerConfig trainer;
  std::string output;
};

enum class SampleMethod { kFull, kVde, kBoth };

// Each command returns the process exit code: 0 iff every requested
// trajectory finished without a non-finite abort. Messages go to `out`.

// Writes the weight file; prints the loss report.
int cmd_train(const TrainOptions& options, std::ostream& out);

// Writes <output>/full_seed<S>.{json,csv} and <output>/vde_n<n>_seed<S>.{json,csv}
// plus run.json; prints NFE and wall time per trajectory.
int cmd_sample(const ExperimentConfig& config, SampleMethod method, std::ostream& out);

// Writes <output>/bench.csv, bench.json and run.json.
int cmd_bench(const ExperimentConfig& config, std::ostream& out);

// Writes <output>/trace.csv and run.json; prints the aggregate errors.
int cmd_trace(const ExperimentConfig& config, std::ostream& out);

// Prints the plan string and "NFE <k>", or the schedule JSON.
int cmd_nfe(std::size_t steps, std::size_t warmup, std::size_t interval,
            std::size_t calls_per_step, bool as_json, std::ostream& out);

// Applies the config's simd choice and returns the config with the ISA that
// actually runs recorded in it.
ExperimentConfig resolve(const ExperimentConfig& config);

}  // namespace vde::bench
