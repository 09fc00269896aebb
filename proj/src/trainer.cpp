// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/trainer.hpp"

#include <cmath>
#include <string>

#include "vde/simd/kernels.hpp"

namespace vde {
namespace {

constexpr std::size_t kDim = 2;
constexpr std::uint64_t kTrainStream = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kEvalStream = 0xD1B54A32D192ED03ull;
constexpr std::uint64_t kHeldoutStream = 0x8CB92BA72F3D8DD7ull;

struct Example {
  std::array<double, kDim> xt;
  std::array<double, kDim> target;
  double t;
};

Example draw_example(const ToyDataset& dataset, Rng& rng) {
  const auto x1 = dataset.sample(rng);
  const double n0 = rng.normal();
  const double n1 = rng.normal();
  const double t = rng.uniform();
  Example e;
  e.t = t;
  e.xt = {t * x1[0] + (1.0 - t) * n0, t * x1[1] + (1.0 - t) * n1};
  e.target = {x1[0] - n0, x1[1] - n1};
  return e;
}

// Mutable parameter copy plus the scratch needed for one backward pass.
class Network {
 public:
  Network(const MlpField& field)
      : layers_(field.layers()), activation_(field.activation()), features_(field.time_features()) {
    for (const DenseLayer& l : layers_) {
      z_.emplace_back(l.out);
      h_.emplace_back(l.in);
      grad_w_.emplace_back(l.w.size());
      grad_b_.emplace_back(l.out);
      m_w_.emplace_back(l.w.size());
      v_w_.emplace_back(l.w.size());
      m_b_.emplace_back(l.out);
      v_b_.emplace_back(l.out);
      delta_.emplace_back(l.out);
    }
  }

  void zero_grad() {
    for (auto& g : grad_w_) std::fill(g.begin(), g.end(), 0.0);
    for (auto& g : grad_b_) std::fill(g.begin(), g.end(), 0.0);
  }

  // Accumulates d(scale * |out - target|^2) into the gradients; returns |out - target|^2.
  double accumulate(const Example& e, double scale) {
    const simd::KernelTable& k = simd::active();
    const std::size_t depth = layers_.size();
    std::copy(e.xt.begin(), e.xt.end(), h_[0].begin());
    features_.write(e.t, std::span<double>(h_[0]).subspan(kDim, features_.width()));
    for (std::size_t l = 0; l < depth; ++l) {
      const DenseLayer& layer = layers_[l];
      k.gemv(layer.w.data(), layer.out, layer.in, h_[l].data(), layer.b.data(), z_[l].data());
      if (l + 1 < depth) {
        for (std::size_t i = 0; i < layer.out; ++i) h_[l + 1][i] = activate(activation_, z_[l][i]);
      }
    }
    std::vector<double>& top = delta_[depth - 1];
    double sq = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
      const double diff = z_[depth - 1][i] - e.target[i];
      sq += diff * diff;
      top[i] = 2.0 * scale * diff;
    }
    for (std::size_t l = depth; l-- > 0;) {
      const DenseLayer& layer = layers_[l];
      k.ger_acc(grad_w_[l].data(), layer.out, layer.in, delta_[l].data(), h_[l].data());
      k.axpy(1.0, delta_[l].data(), grad_b_[l].data(), layer.out);
      if (l == 0) break;
      std::vector<double>& below = delta_[l - 1];
      std::fill(below.begin(), below.end(), 0.0);
      k.gemv_t_acc(layer.w.data(), layer.out, layer.in, delta_[l].data(), below.data());
      for (std::size_t i = 0; i < below.size(); ++i) {
        below[i] *= activate_derivative(activation_, z_[l - 1][i]);
      }
    }
    return sq;
  }

  void adam_step(const simd::AdamParams& p) {
    const simd::KernelTable& k = simd::active();
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      DenseLayer& layer = layers_[l];
      k.adam_update(layer.w.data(), grad_w_[l].data(), m_w_[l].data(), v_w_[l].data(),
                    layer.w.size(), p);
      k.adam_update(layer.b.data(), grad_b_[l].data(), m_b_[l].data(), v_b_[l].data(),
                    layer.b.size(), p);
    }
  }

  MlpField snapshot() const { return MlpField(layers_, activation_, features_); }

 private:
  std::vector<DenseLayer> layers_;
  Activation activation_;
  TimeFeatures features_;
  std::vector<std::vector<double>> z_, h_, delta_;
  std::vector<std::vector<double>> grad_w_, grad_b_, m_w_, v_w_, m_b_, v_b_;
};

}  // namespace

MlpField init_mlp(std::size_t dim, const TrainerConfig& config) {
  Rng rng(config.seed);
  std::vector<std::size_t> widths{dim + config.time_features.width()};
  widths.insert(widths.end(), config.hidden.begin(), config.hidden.end());
  widths.push_back(dim);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    DenseLayer layer;
    layer.in = widths[l];
    layer.out = widths[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    layer.w.resize(layer.in * layer.out);
    for (double& w : layer.w) w = rng.uniform(-limit, limit);
    layer.b.assign(layer.out, 0.0);
    layers.push_back(std::move(layer));
  }
  return MlpField(std::move(layers), config.activation, config.time_features);
}

double flow_matching_loss(const MlpField& field, const ToyDataset& dataset, Rng& rng,
                          std::size_t count) {
  require(field.dim() == kDim, Errc::kShapeMismatch, "toy datasets are 2-D");
  double total = 0.0;
  std::array<double, kDim> out{};
  for (std::size_t i = 0; i < count; ++i) {
    const Example e = draw_example(dataset, rng);
    field.forward(e.xt, e.t, out);
    total += simd::scalar_kernels().sq_diff(out.data(), e.target.data(), kDim);
  }
  return total / static_cast<double>(count);
}

TrainResult train_flow_matching(const ToyDataset& dataset, const TrainerConfig& config) {
  require(config.batch_size > 0, Errc::kInvalidConfig, "batch size must be positive");
  require(config.eval_batch_size > 0, Errc::kInvalidConfig, "eval batch size must be positive");
  require(config.learning_rate > 0.0, Errc::kInvalidConfig, "learning rate must be positive");

  MlpField initial = init_mlp(kDim, config);
  TrainReport report;
  {
    Rng eval(config.seed ^ kEvalStream);
    report.initial_loss = flow_matching_loss(initial, dataset, eval, config.eval_batch_size);
  }

  Network net(initial);
  Rng rng(config.seed ^ kTrainStream);
  const double scale = 1.0 / static_cast<double>(config.batch_size);
  double beta1_pow = 1.0;
  double beta2_pow = 1.0;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    net.zero_grad();
    double batch_loss = 0.0;
    for (std::size_t s = 0; s < config.batch_size; ++s) {
      batch_loss += net.accumulate(draw_example(dataset, rng), scale);
    }
    if (!std::isfinite(batch_loss)) {
      fail(Errc::kDivergence, "loss became non-finite at iteration " + std::to_string(it));
    }
    beta1_pow *= config.beta1;
    beta2_pow *= config.beta2;
    net.adam_step({config.learning_rate, config.beta1, config.beta2, config.epsilon,
                   1.0 - beta1_pow, 1.0 - beta2_pow});
  }

  MlpField trained = config.iterations == 0 ? std::move(initial) : net.snapshot();
  report.iterations = config.iterations;
  {
    Rng eval(config.seed ^ kEvalStream);
    report.final_loss = flow_matching_loss(trained, dataset, eval, config.eval_batch_size);
  }
  {
    Rng heldout(config.seed ^ kHeldoutStream);
    std::vector<std::array<double, kDim>> targets;
    std::array<double, kDim> mean{};
    double loss = 0.0;
    std::array<double, kDim> out{};
    for (std::size_t i = 0; i < config.eval_batch_size; ++i) {
      const Example e = draw_example(dataset, heldout);
      trained.forward(e.xt, e.t, out);
      loss += simd::scalar_kernels().sq_diff(out.data(), e.target.data(), kDim);
      targets.push_back(e.target);
      mean[0] += e.target[0];
      mean[1] += e.target[1];
    }
    const auto n = static_cast<double>(config.eval_batch_size);
    mean[0] /= n;
    mean[1] /= n;
    double var = 0.0;
    for (const auto& d : targets) {
      var += (d[0] - mean[0]) * (d[0] - mean[0]) + (d[1] - mean[1]) * (d[1] - mean[1]);
    }
    report.heldout_loss = loss / n;
    report.target_variance = var / n;
  }
  if (!std::isfinite(report.final_loss) || !std::isfinite(report.heldout_loss)) {
    fail(Errc::kDivergence, "trained network produces non-finite loss");
  }
  return {std::move(trained), report};
}

}  // namespace vde
