// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vde/estimator.hpp"
#include "vde/flow_core.hpp"
#include "vde/sampler.hpp"

namespace vde::bench {

inline constexpr std::string_view kVersion = "0.3.0";

enum class FieldKind { kGaussian, kControlled, kMlp };

struct PolynomialSpec {
  std::vector<double> breaks;
  std::vector<std::vector<double>> pieces;
};

struct FieldSpec {
  FieldKind kind = FieldKind::kGaussian;
  std::string weights_path;  // mlp
  // gaussian: one entry fills every coordinate
  std::vector<double> mu1{1.0};
  double s1 = 1.0;
  // controlled: a(t), b(t) and the reference vector (empty -> w_i = i + 1)
  PolynomialSpec a{{}, {{1.0, 1.0}}};
  PolynomialSpec b{{}, {{0.0}}};
  std::vector<double> w;

  // "gaussian", "controlled" or "mlp:<path>"
  std::string label() const;
};

// Everything needed to reproduce a sample/bench/trace run. Serialized
// verbatim (after resolution) into run.json.
struct ExperimentConfig {
  FieldSpec field;
  std::size_t steps = 50;  // T
  std::size_t warmup = 7;  // W; also the leading steps excluded from trace aggregates
  std::vector<std::size_t> intervals{2};
  std::size_t calls_per_step = 1;
  std::size_t seeds = 1;
  std::uint64_t base_seed = 0;
  std::vector<std::size_t> shape{8, 8};
  VdeMode mode = VdeMode::kFixedWarmup;
  StablePhaseConfig stable{};
  Spacing spacing = Spacing::kUniform;
  double shift = 1.0;
  std::string output_dir = "out";
  std::size_t workers = 0;     // 0 -> hardware concurrency; does not affect outputs
  std::string simd = "auto";   // kernel ISA; run.json records the resolved one

  Shape latent_shape() const;
  TimeGrid grid() const;
};

// Parses a config file, or a run.json (its "config" member). Unknown keys
// and invalid values raise kInvalidConfig with "<origin>:<line>: <message>".
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "config");

// Checks every module precondition that can be checked without running.
// `origin_text` (optional) lets messages point at the offending line.
void validate_config(const ExperimentConfig& config, std::string_view origin_text = {},
                     std::string_view origin = "config");

std::string config_to_json(const ExperimentConfig& config);
// {"version":..,"command":..,"config":{..}}
std::string run_manifest(const ExperimentConfig& config, std::string_view command);

// Parses "gaussian" | "controlled" | "mlp:<path>" into `desc` (other fields kept).
void apply_field_label(FieldSpec& desc, std::string_view label);

// 1-based line of the object key at `pointer` ("/gaussian/s1") in JSON text, if present.
std::optional<std::size_t> locate_key_line(std::string_view text, std::string_view pointer);

}  // namespace vde::bench
