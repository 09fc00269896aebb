// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "vde/simd/kernels.hpp"

namespace vde {
namespace {

void require_same_dim(const Latent& a, const Latent& b) {
  require(a.dim() == b.dim(), Errc::kDimensionMismatch, "metric inputs differ in size");
}

void require_same_grid(const Latent& a, const Latent& b) {
  require(a.shape().is_grid() && b.shape().is_grid() && a.shape() == b.shape(),
          Errc::kShapeMismatch, "metric needs two grids of the same shape");
}

}  // namespace

double mse(const Latent& a, const Latent& b) {
  require_same_dim(a, b);
  return simd::sq_diff(a.values(), b.values()) / static_cast<double>(a.dim());
}

double rel_l2(const Latent& a, const Latent& baseline) {
  require_same_dim(a, baseline);
  const double base = norm(baseline);
  require(base > 0.0, Errc::kZeroBaselineNorm, "baseline has zero norm");
  return std::sqrt(simd::sq_diff(a.values(), baseline.values())) / base;
}

double cosine(const Latent& a, const Latent& b) {
  require_same_dim(a, b);
  const double na = norm(a);
  const double nb = norm(b);
  require(na > 0.0 && nb > 0.0, Errc::kZeroLatentNorm, "cosine of a zero vector");
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

double psnr(const Latent& a, const Latent& b, double peak) {
  require_same_grid(a, b);
  require(std::isfinite(peak) && peak > 0.0, Errc::kOutOfRange, "psnr peak must be positive");
  const double m = mse(a, b);
  if (m == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(peak * peak / m));
}

double ssim_with_range(const Latent& a, const Latent& b, double data_range) {
  require_same_grid(a, b);
  const std::size_t rows = a.shape().rows();
  const std::size_t cols = a.shape().cols();
  if (rows < kSsimWindow || cols < kSsimWindow) {
    fail(Errc::kGridTooSmall, "ssim needs grids of at least 7x7");
  }
  const double c1 = (0.01 * data_range) * (0.01 * data_range);
  const double c2 = (0.03 * data_range) * (0.03 * data_range);
  constexpr double n = static_cast<double>(kSsimWindow * kSsimWindow);
  const auto av = a.values();
  const auto bv = b.values();

  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t r0 = 0; r0 + kSsimWindow <= rows; ++r0) {
    for (std::size_t c0 = 0; c0 + kSsimWindow <= cols; ++c0) {
      double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
      for (std::size_t r = r0; r < r0 + kSsimWindow; ++r) {
        for (std::size_t c = c0; c < c0 + kSsimWindow; ++c) {
          const double x = av[r * cols + c];
          const double y = bv[r * cols + c];
          sa += x;
          sb += y;
          saa += x * x;
          sbb += y * y;
          sab += x * y;
        }
      }
      const double ma = sa / n;
      const double mb = sb / n;
      const double cov_norm = n / (n - 1.0);
      const double va = cov_norm * (saa / n - ma * ma);
      const double vb = cov_norm * (sbb / n - mb * mb);
      const double vab = cov_norm * (sab / n - ma * mb);
      total += ((2.0 * ma * mb + c1) * (2.0 * vab + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

std::pair<Latent, Latent> normalize_to_baseline(const Latent& a, const Latent& baseline) {
  require_same_dim(a, baseline);
  const auto [lo, hi] = std::minmax_element(baseline.values().begin(), baseline.values().end());
  const double range = *hi - *lo;
  require(range > 0.0, Errc::kFlatBaseline, "baseline has zero dynamic range");
  const double offset = *lo;
  auto map = [&](const Latent& x) {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = (x[i] - offset) / range;
    return Latent(x.shape(), std::move(out));
  };
  return {map(a), map(baseline)};
}

double ssim(const Latent& a, const Latent& baseline) {
  require_same_grid(a, baseline);
  const auto [na, nb] = normalize_to_baseline(a, baseline);
  return ssim_with_range(na, nb, 1.0);
}

RetentionReport compare_to_baseline(const Latent& method, const Latent& baseline,
                                    std::uint64_t baseline_nfe, std::uint64_t method_nfe) {
  require(method_nfe > 0, Errc::kOutOfRange, "method NFE must be positive");
  RetentionReport r;
  r.mse = mse(method, baseline);
  r.rel_l2 = rel_l2(method, baseline);
  r.cosine = cosine(method, baseline);
  r.nfe_ratio = static_cast<double>(baseline_nfe) / static_cast<double>(method_nfe);
  const auto [lo, hi] = std::minmax_element(baseline.values().begin(), baseline.values().end());
  // A constant baseline has no dynamic range to normalize against; the
  // image-style scores are left out rather than failing the whole report.
  if (method.shape().is_grid() && method.shape() == baseline.shape() && *hi > *lo) {
    const auto [na, nb] = normalize_to_baseline(method, baseline);
    r.psnr = psnr(na, nb, 1.0);
    if (method.shape().rows() >= kSsimWindow && method.shape().cols() >= kSsimWindow) {
      r.ssim = ssim_with_range(na, nb, 1.0);
    }
  }
  return r;
}

std::string RetentionReport::to_json() const {
  nlohmann::ordered_json j;
  j["mse"] = mse;
  j["rel_l2"] = rel_l2;
  j["psnr"] = psnr ? nlohmann::ordered_json(*psnr) : nlohmann::ordered_json(nullptr);
  j["ssim"] = ssim ? nlohmann::ordered_json(*ssim) : nlohmann::ordered_json(nullptr);
  j["cosine"] = cosine;
  j["nfe_ratio"] = nfe_ratio;
  return j.dump();
}

}  // namespace vde
