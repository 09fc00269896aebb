// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vde/velocity_field.hpp"

namespace vde {

enum class Activation { kTanh, kGelu, kRelu };

// Throws kUnknownActivation.
Activation parse_activation(std::string_view name);
std::string_view activation_name(Activation a) noexcept;

double activate(Activation a, double z) noexcept;
double activate_derivative(Activation a, double z) noexcept;

// Time embedding appended after the latent coordinates:
//   [t]  if include_raw, then sin(2^k pi t), cos(2^k pi t) for k = 0..fourier_pairs-1
struct TimeFeatures {
  int fourier_pairs = 4;
  bool include_raw = true;

  std::size_t width() const noexcept {
    return (include_raw ? 1u : 0u) + 2u * static_cast<std::size_t>(fourier_pairs);
  }
  void write(double t, std::span<double> out) const noexcept;
};

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> w;  // row-major out x in
  std::vector<double> b;  // out
};

// Feed-forward velocity model over [x, time_features(t)]. The activation is
// applied after every layer except the last.
class MlpField final : public VelocityField {
 public:
  // Throws kShapeMismatch on inconsistent layers, kNonFiniteInput on bad parameters.
  MlpField(std::vector<DenseLayer> layers, Activation activation, TimeFeatures features);

  std::size_t dim() const noexcept override { return dim_; }

  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  Activation activation() const noexcept { return activation_; }
  const TimeFeatures& time_features() const noexcept { return features_; }

  // Forward pass on raw coordinates; `out` must have dim() entries.
  void forward(std::span<const double> x, double t, std::span<double> out) const;

 protected:
  Velocity compute(const Latent& x, double t) const override;

 private:
  std::vector<DenseLayer> layers_;
  Activation activation_;
  TimeFeatures features_;
  std::size_t dim_ = 0;
  std::size_t widest_ = 0;
};

// Weight file:
// {"layers":[{"in":..,"out":..,"w":[..],"b":[..]},..],
//  "activation":"tanh"|"gelu"|"relu",
//  "time_features":{"fourier_pairs":..,"include_raw":..}}
std::string weights_to_json(const MlpField& field);
MlpField weights_from_json(std::string_view text);
void save_weights(const MlpField& field, const std::filesystem::path& path);
MlpField load_weights(const std::filesystem::path& path);

}  // namespace vde
