#pragma once
// Color temperature -> RGB and RGB <-> HSV.
//
// kelvin_to_rgb integrates the Planck blackbody spectrum against analytic
// CIE-1931 color matching fits (the piecewise-Gaussian lobes of Wyman, Sloan
// & Shirley 2013), converts XYZ to linear sRGB, clips, normalizes the max
// channel to 1 and gamma-encodes. Fully deterministic; the values over the
// dataset's five temperatures are tabulated in docs/kelvin_table.md and
// frozen in tests.
//
// A note on naming: light color here is decomposed with hue/saturation/value
// ("brightness") cylindrical coordinates. For a max-normalized color V = 1,
// so saturation of near-white 6500 K light comes out ~0, which is the
// property the envmap compact form relies on.

#include <algorithm>
#include <cmath>
#include <string>

#include "relight/common.hpp"

namespace relight {

struct Rgb {
  double r = 0, g = 0, b = 0;
};

struct Hsv {
  double h = 0;  // [0,1)
  double s = 0;  // [0,1]
  double v = 0;  // [0,1]
};

namespace detail {

// One piecewise Gaussian lobe: different widths left/right of the mean.
inline double cmf_lobe(double x, double mu, double s_lo, double s_hi) {
  const double s = x < mu ? s_lo : s_hi;
  const double t = (x - mu) / s;
  return std::exp(-0.5 * t * t);
}

inline double cmf_x(double l) {
  return 1.056 * cmf_lobe(l, 599.8, 37.9, 31.0) +
         0.362 * cmf_lobe(l, 442.0, 16.0, 26.7) -
         0.065 * cmf_lobe(l, 501.1, 20.4, 26.2);
}
inline double cmf_y(double l) {
  return 0.821 * cmf_lobe(l, 568.8, 46.9, 40.5) +
         0.286 * cmf_lobe(l, 530.9, 16.3, 31.1);
}
inline double cmf_z(double l) {
  return 1.217 * cmf_lobe(l, 437.0, 11.8, 36.0) +
         0.681 * cmf_lobe(l, 459.0, 26.0, 13.8);
}

// Planck spectral radiance up to an irrelevant constant; lambda in nm.
inline double planck_rel(double l_nm, double kelvin) {
  const double c2 = 1.4388e-2;  // hc/k in m*K
  const double lm = l_nm * 1e-9;
  return 1.0 / (std::pow(lm, 5) * (std::exp(c2 / (lm * kelvin)) - 1.0));
}

inline double srgb_gamma(double u) {
  return u <= 0.0031308 ? 12.92 * u : 1.055 * std::pow(u, 1.0 / 2.4) - 0.055;
}

}  // namespace detail

// Blackbody color at the given temperature, max channel normalized to 1.
// Valid for [1000, 12000] K.
inline Rgb kelvin_to_rgb(double kelvin) {
  check_usage(kelvin >= 1000.0 && kelvin <= 12000.0,
              "kelvin_to_rgb: temperature " + std::to_string(kelvin) +
                  " outside [1000, 12000]");
  double X = 0, Y = 0, Z = 0;
  for (int i = 0; i <= 80; ++i) {  // 380..780 nm, 5 nm steps
    const double l = 380.0 + 5.0 * i;
    const double p = detail::planck_rel(l, kelvin);
    X += p * detail::cmf_x(l);
    Y += p * detail::cmf_y(l);
    Z += p * detail::cmf_z(l);
  }
  double r = 3.2406 * X - 1.5372 * Y - 0.4986 * Z;
  double g = -0.9689 * X + 1.8758 * Y + 0.0415 * Z;
  double b = 0.0557 * X - 0.2040 * Y + 1.0570 * Z;
  r = std::max(0.0, r);
  g = std::max(0.0, g);
  b = std::max(0.0, b);
  const double m = std::max(r, std::max(g, b));
  return {detail::srgb_gamma(r / m), detail::srgb_gamma(g / m),
          detail::srgb_gamma(b / m)};
}

inline Hsv rgb_to_hsv(const Rgb& c) {
  const double mx = std::max(c.r, std::max(c.g, c.b));
  const double mn = std::min(c.r, std::min(c.g, c.b));
  const double d = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    out.h = 0.0;
    return out;
  }
  double h;
  if (mx == c.r) {
    h = (c.g - c.b) / d;
    if (h < 0) h += 6.0;
  } else if (mx == c.g) {
    h = (c.b - c.r) / d + 2.0;
  } else {
    h = (c.r - c.g) / d + 4.0;
  }
  out.h = h / 6.0;
  if (out.h >= 1.0) out.h -= 1.0;
  return out;
}

inline Rgb hsv_to_rgb(const Hsv& c) {
  const double h6 = (c.h - std::floor(c.h)) * 6.0;
  const int sect = std::min(5, static_cast<int>(h6));
  const double f = h6 - sect;
  const double p = c.v * (1.0 - c.s);
  const double q = c.v * (1.0 - c.s * f);
  const double t = c.v * (1.0 - c.s * (1.0 - f));
  switch (sect) {
    case 0: return {c.v, t, p};
    case 1: return {q, c.v, p};
    case 2: return {p, c.v, t};
    case 3: return {p, q, c.v};
    case 4: return {t, p, c.v};
    default: return {c.v, p, q};
  }
}

}  // namespace relight
