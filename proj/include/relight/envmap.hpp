#pragma once
// Ground-truth environment maps from known illumination. A map is 16x32
// (latitude x longitude): a 1-D circular Gaussian brightness profile over
// columns, replicated down the rows, colored by the blackbody color of the
// light. Two forms exist: the full RGB grid and the compact form
// (hue, saturation, 512 brightness values) used by the envmap_scene variant.

#include <cmath>
#include <vector>

#include "relight/color.hpp"
#include "relight/common.hpp"
#include "relight/illumination.hpp"
#include "relight/tensor.hpp"

namespace relight {

inline constexpr int kEnvmapH = 16;
inline constexpr int kEnvmapW = 32;
inline constexpr int kEnvmapPixels = kEnvmapH * kEnvmapW;  // 512

// Brightness profile over columns: profile[x] = exp(-d(x, mu)^2 / (2 sigma^2))
// with mu = degrees/360 * width, sigma = 0.1 * height columns and circular
// column distance. Columns are sampled at integer x (not bin centers), so a
// compass direction always lands mu on an integer and the peak is exactly 1.
inline std::vector<double> direction_profile(double degrees,
                                             int width = kEnvmapW,
                                             int height = kEnvmapH) {
  check_usage(degrees >= 0.0 && degrees < 360.0,
              "direction_profile: degrees must be in [0, 360)");
  const double mu = degrees / 360.0 * width;
  const double sigma = 0.1 * height;
  std::vector<double> p(width);
  for (int x = 0; x < width; ++x) {
    double d = std::abs(x - mu);
    d = std::min(d, width - d);
    p[x] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return p;
}

// Column index nearest the profile mean.
inline int peak_column(double degrees, int width = kEnvmapW) {
  return static_cast<int>(std::lround(degrees / 360.0 * width)) % width;
}

struct EnvmapCompact {
  double hue = 0;                  // [0,1)
  double saturation = 0;           // [0,1]
  std::vector<float> brightness;   // 512 values, row-major 16x32

  // (hue, saturation, brightness...) as one flat 514-vector
  std::vector<float> flat() const {
    std::vector<float> out;
    out.reserve(2 + brightness.size());
    out.push_back(static_cast<float>(hue));
    out.push_back(static_cast<float>(saturation));
    out.insert(out.end(), brightness.begin(), brightness.end());
    return out;
  }
};

// Full RGB map as a (1, 3, 16, 32) tensor. Each column's color is
// hsv(hue, sat, profile[x] * value) of the light color; rows are identical.
inline Tensor generate_envmap_rgb(const Illumination& illum) {
  check_usage(illum.valid(), "generate_envmap_rgb: invalid illumination");
  const Hsv light = rgb_to_hsv(kelvin_to_rgb(illum.temperature_k));
  const std::vector<double> p = direction_profile(illum.direction_deg);
  Tensor map(1, 3, kEnvmapH, kEnvmapW);
  std::vector<float> row_r(kEnvmapW), row_g(kEnvmapW), row_b(kEnvmapW);
  for (int x = 0; x < kEnvmapW; ++x) {
    const Rgb c = hsv_to_rgb({light.h, light.s, p[x] * light.v});
    row_r[x] = static_cast<float>(c.r);
    row_g[x] = static_cast<float>(c.g);
    row_b[x] = static_cast<float>(c.b);
  }
  for (int r = 0; r < kEnvmapH; ++r) {
    std::copy(row_r.begin(), row_r.end(), map.chan(0, 0) + r * kEnvmapW);
    std::copy(row_g.begin(), row_g.end(), map.chan(0, 1) + r * kEnvmapW);
    std::copy(row_b.begin(), row_b.end(), map.chan(0, 2) + r * kEnvmapW);
  }
  return map;
}

// Compact form: hue/sat of the light color plus the row-replicated profile.
inline EnvmapCompact generate_envmap_hsl(const Illumination& illum) {
  check_usage(illum.valid(), "generate_envmap_hsl: invalid illumination");
  const Hsv light = rgb_to_hsv(kelvin_to_rgb(illum.temperature_k));
  const std::vector<double> p = direction_profile(illum.direction_deg);
  EnvmapCompact out;
  out.hue = light.h;
  out.saturation = light.s;
  out.brightness.resize(kEnvmapPixels);
  for (int r = 0; r < kEnvmapH; ++r) {
    for (int x = 0; x < kEnvmapW; ++x) {
      out.brightness[r * kEnvmapW + x] = static_cast<float>(p[x] * light.v);
    }
  }
  return out;
}

// Expand a compact map back into the RGB grid (inverse of the pair above up
// to float rounding).
inline Tensor compact_to_rgb(const EnvmapCompact& compact) {
  check_usage(static_cast<int>(compact.brightness.size()) == kEnvmapPixels,
              "compact_to_rgb: brightness must have 512 entries");
  Tensor map(1, 3, kEnvmapH, kEnvmapW);
  for (int i = 0; i < kEnvmapPixels; ++i) {
    const Rgb c =
        hsv_to_rgb({compact.hue, compact.saturation, compact.brightness[i]});
    map.chan(0, 0)[i] = static_cast<float>(c.r);
    map.chan(0, 1)[i] = static_cast<float>(c.g);
    map.chan(0, 2)[i] = static_cast<float>(c.b);
  }
  return map;
}

}  // namespace relight
