// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vde/flow_core.hpp"

namespace vde {

// PSNR reported for identical inputs (mse = 0).
inline constexpr double kPsnrCap = 100.0;
inline constexpr std::size_t kSsimWindow = 7;

double mse(const Latent& a, const Latent& b);
// |a - b| / |baseline|; throws kZeroBaselineNorm.
double rel_l2(const Latent& a, const Latent& baseline);
// Throws kZeroLatentNorm if either side vanishes.
double cosine(const Latent& a, const Latent& b);

// 10 log10(peak^2 / mse), capped at kPsnrCap. Throws kShapeMismatch unless
// both are grids of the same shape, kOutOfRange unless peak > 0.
double psnr(const Latent& a, const Latent& b, double peak);

// Mean SSIM over every fully contained 7x7 window (uniform weights, sample
// covariance with N - 1), C1 = (0.01 L)^2, C2 = (0.03 L)^2. No normalization;
// symmetric in a and b. Throws kShapeMismatch, kGridTooSmall.
double ssim_with_range(const Latent& a, const Latent& b, double data_range);

// Maps both inputs through the affine map that sends the baseline's
// [min, max] to [0, 1], then ssim_with_range with L = 1.
// Throws kFlatBaseline when the baseline is constant.
double ssim(const Latent& a, const Latent& baseline);

// a and baseline after the baseline-anchored [0, 1] map used by ssim().
std::pair<Latent, Latent> normalize_to_baseline(const Latent& a, const Latent& baseline);

struct RetentionReport {
  double mse = 0.0;
  double rel_l2 = 0.0;
  std::optional<double> psnr;  // baseline-normalized, peak 1; grid latents only
  std::optional<double> ssim;  // grid latents only
  double cosine = 0.0;
  double nfe_ratio = 0.0;      // baseline NFE / method NFE

  // {"mse":..,"rel_l2":..,"psnr":..|null,"ssim":..|null,"cosine":..,"nfe_ratio":..}
  std::string to_json() const;
};

RetentionReport compare_to_baseline(const Latent& method, const Latent& baseline,
                                    std::uint64_t baseline_nfe, std::uint64_t method_nfe);

}  // namespace vde
