// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "vde/datasets.hpp"
#include "vde/mlp_field.hpp"

namespace vde {

struct TrainerConfig {
  std::vector<std::size_t> hidden{64, 64};
  Activation activation = Activation::kTanh;
  TimeFeatures time_features{};
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t batch_size = 256;
  std::size_t iterations = 5000;
  std::uint64_t seed = 0;
  // Fixed batches used to report the loss before/after training and on held-out data.
  std::size_t eval_batch_size = 4096;
};

struct TrainReport {
  double initial_loss = 0.0;     // fixed evaluation batch, before the first update
  double final_loss = 0.0;       // same batch, after the last update
  double heldout_loss = 0.0;     // independent batch, after training
  double target_variance = 0.0;  // E|D - E[D]|^2 of the held-out targets D = x1 - x0
  std::size_t iterations = 0;

  bool beats_constant_predictor() const noexcept { return heldout_loss < target_variance; }
};

struct TrainResult {
  MlpField field;
  TrainReport report;
};

// Glorot-uniform weights (limit sqrt(6 / (in + out))) and zero biases, drawn
// layer by layer in row-major order from Rng(config.seed).
MlpField init_mlp(std::size_t dim, const TrainerConfig& config);

// Conditional flow matching: minimize the batch mean of
// |u(t x1 + (1 - t) x0, t) - (x1 - x0)|^2 with x1 ~ dataset, x0 ~ N(0, I),
// t ~ U[0, 1), using Adam. Per sample the training stream draws x1, then x0,
// then t. Throws kDivergence if the loss becomes non-finite.
TrainResult train_flow_matching(const ToyDataset& dataset, const TrainerConfig& config);

// Mean squared flow-matching loss of `field` on `count` samples from `rng`.
double flow_matching_loss(const MlpField& field, const ToyDataset& dataset, Rng& rng,
                          std::size_t count);

}  // namespace vde
