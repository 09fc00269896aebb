// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/mlp_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "vde/simd/kernels.hpp"

namespace vde {

using nlohmann::json;

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "gelu") return Activation::kGelu;
  if (name == "relu") return Activation::kRelu;
  fail(Errc::kUnknownActivation, "unknown activation '" + std::string(name) + "'");
}

std::string_view activation_name(Activation a) noexcept {
  switch (a) {
    case Activation::kTanh: return "tanh";
    case Activation::kGelu: return "gelu";
    case Activation::kRelu: return "relu";
  }
  return "tanh";
}

// gelu is the exact erf form.
double activate(Activation a, double z) noexcept {
  switch (a) {
    case Activation::kTanh: return std::tanh(z);
    case Activation::kGelu: return 0.5 * z * (1.0 + std::erf(z * std::numbers::sqrt2 / 2.0));
    case Activation::kRelu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

double activate_derivative(Activation a, double z) noexcept {
  switch (a) {
    case Activation::kTanh: {
      const double th = std::tanh(z);
      return 1.0 - th * th;
    }
    case Activation::kGelu: {
      const double cdf = 0.5 * (1.0 + std::erf(z * std::numbers::sqrt2 / 2.0));
      const double pdf = std::exp(-0.5 * z * z) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
      return cdf + z * pdf;
    }
    case Activation::kRelu: return z > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

void TimeFeatures::write(double t, std::span<double> out) const noexcept {
  std::size_t j = 0;
  if (include_raw) out[j++] = t;
  double freq = std::numbers::pi;
  for (int k = 0; k < fourier_pairs; ++k) {
    out[j++] = std::sin(freq * t);
    out[j++] = std::cos(freq * t);
    freq *= 2.0;
  }
}

MlpField::MlpField(std::vector<DenseLayer> layers, Activation activation, TimeFeatures features)
    : layers_(std::move(layers)), activation_(activation), features_(features) {
  require(!layers_.empty(), Errc::kShapeMismatch, "network has no layers");
  require(features_.fourier_pairs >= 0, Errc::kShapeMismatch, "negative fourier pair count");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    const std::string where = "layer " + std::to_string(l);
    require(layer.in > 0 && layer.out > 0, Errc::kShapeMismatch, "layer with zero width");
    if (layer.w.size() != layer.in * layer.out || layer.b.size() != layer.out) {
      fail(Errc::kShapeMismatch, where + ": weight/bias sizes do not match in/out");
    }
    if (l > 0 && layer.in != layers_[l - 1].out) {
      fail(Errc::kShapeMismatch, where + ": input width differs from previous output");
    }
    require(all_finite(layer.w) && all_finite(layer.b), Errc::kNonFiniteInput,
            "network parameters must be finite");
    widest_ = std::max({widest_, layer.in, layer.out});
  }
  dim_ = layers_.back().out;
  if (layers_.front().in != dim_ + features_.width()) {
    fail(Errc::kShapeMismatch, "first layer expects " + std::to_string(layers_.front().in) +
                                   " inputs, latent + time features give " +
                                   std::to_string(dim_ + features_.width()));
  }
  require(dim_ >= 2, Errc::kShapeMismatch, "network output must have >= 2 entries");
}

void MlpField::forward(std::span<const double> x, double t, std::span<double> out) const {
  const simd::KernelTable& k = simd::active();
  std::vector<double> a(widest_), z(widest_);
  std::copy(x.begin(), x.end(), a.begin());
  features_.write(t, std::span<double>(a).subspan(x.size(), features_.width()));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    k.gemv(layer.w.data(), layer.out, layer.in, a.data(), layer.b.data(), z.data());
    if (l + 1 == layers_.size()) {
      std::copy_n(z.begin(), layer.out, out.begin());
    } else {
      for (std::size_t i = 0; i < layer.out; ++i) a[i] = activate(activation_, z[i]);
    }
  }
}

Velocity MlpField::compute(const Latent& x, double t) const {
  std::vector<double> out(dim_);
  forward(x.values(), t, out);
  return Velocity(x.shape(), std::move(out));
}

std::string weights_to_json(const MlpField& field) {
  json layers = json::array();
  for (const DenseLayer& l : field.layers()) {
    layers.push_back({{"in", l.in}, {"out", l.out}, {"w", l.w}, {"b", l.b}});
  }
  json doc = {
      {"layers", std::move(layers)},
      {"activation", std::string(activation_name(field.activation()))},
      {"time_features",
       {{"fourier_pairs", field.time_features().fourier_pairs},
        {"include_raw", field.time_features().include_raw}}},
  };
  return doc.dump() + "\n";
}

MlpField weights_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::kIo, std::string("weight file is not valid JSON: ") + e.what());
  }
  try {
    std::vector<DenseLayer> layers;
    for (const json& l : doc.at("layers")) {
      DenseLayer layer;
      layer.in = l.at("in").get<std::size_t>();
      layer.out = l.at("out").get<std::size_t>();
      layer.w = l.at("w").get<std::vector<double>>();
      layer.b = l.at("b").get<std::vector<double>>();
      layers.push_back(std::move(layer));
    }
    TimeFeatures tf;
    const json& jt = doc.at("time_features");
    tf.fourier_pairs = jt.at("fourier_pairs").get<int>();
    tf.include_raw = jt.at("include_raw").get<bool>();
    return MlpField(std::move(layers), parse_activation(doc.at("activation").get<std::string>()),
                    tf);
  } catch (const json::exception& e) {
    fail(Errc::kShapeMismatch, std::string("malformed weight file: ") + e.what());
  }
}

void save_weights(const MlpField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::kIo, "cannot open " + path.string() + " for writing");
  out << weights_to_json(field);
  if (!out) fail(Errc::kIo, "failed writing " + path.string());
}

MlpField load_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return weights_from_json(buf.str());
}

}  // namespace vde
