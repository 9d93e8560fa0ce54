#pragma once
// Training losses and their analytic gradients. Conventions:
//   - reconstruction losses are means over all elements (resolution
//     independent weights);
//   - the envmap loss is the summed squared log1p difference of one map;
//   - angles are degrees, temperatures Kelvin;
//   - latent distance losses are diagnostics only (optimizing them collapses
//     latent variance) and never appear in default weights.

#include <cmath>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "relight/common.hpp"
#include "relight/tensor.hpp"
#include "relight/variant.hpp"

namespace relight {

// --- weights ----------------------------------------------------------------

struct LossWeights {
  double reconstruction = 0;  // L1
  double perceptual = 0;
  double envmap = 0;
  double direction = 0;
  double temperature = 0;
  double hsl = 0;
  double adversarial = 0;

  void validate() const {
    for (double w : {reconstruction, perceptual, envmap, direction,
                     temperature, hsl, adversarial}) {
      check_usage(w >= 0 && std::isfinite(w),
                  "loss weights must be finite and nonnegative");
    }
    check_usage(reconstruction + perceptual + envmap + direction +
                        temperature + hsl + adversarial >
                    0,
                "at least one loss weight must be nonzero");
  }

  static LossWeights defaults_for(Variant v) {
    LossWeights w;
    switch (v) {
      case Variant::illum_predicter:
        w.reconstruction = 1;
        w.direction = 0.1;
        w.temperature = 0.1;
        break;
      case Variant::envmap_only:
        w.reconstruction = 1;
        w.envmap = 0.01;
        break;
      case Variant::envmap_scene:
        w.perceptual = 1;
        w.hsl = 0.01;
        break;
    }
    return w;
  }
};

inline void to_json(nlohmann::json& j, const LossWeights& w) {
  j = nlohmann::json{{"reconstruction", w.reconstruction},
                     {"perceptual", w.perceptual},
                     {"envmap", w.envmap},
                     {"direction", w.direction},
                     {"temperature", w.temperature},
                     {"hsl", w.hsl},
                     {"adversarial", w.adversarial}};
}

inline void from_json(const nlohmann::json& j, LossWeights& w) {
  j.at("reconstruction").get_to(w.reconstruction);
  j.at("perceptual").get_to(w.perceptual);
  j.at("envmap").get_to(w.envmap);
  j.at("direction").get_to(w.direction);
  j.at("temperature").get_to(w.temperature);
  j.at("hsl").get_to(w.hsl);
  j.at("adversarial").get_to(w.adversarial);
  w.validate();
}

// --- L1 reconstruction ------------------------------------------------------

inline double l1_reconstruction(const Tensor& g_hat, const Tensor& g) {
  check_usage(same_shape_ok(g_hat, g), "l1: shape mismatch " +
                                           g_hat.shape_str() + " vs " +
                                           g.shape_str());
  double s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += std::abs(double(g_hat.v[i]) - g.v[i]);
  }
  return s / g.size();
}

inline Tensor l1_reconstruction_grad(const Tensor& g_hat, const Tensor& g) {
  Tensor d(g_hat.n, g_hat.c, g_hat.h, g_hat.w);
  const float inv = 1.0f / g.size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const float diff = g_hat.v[i] - g.v[i];
    d.v[i] = diff > 0 ? inv : diff < 0 ? -inv : 0.0f;
  }
  return d;
}

// --- environment-map loss ---------------------------------------------------
// sum of squared log1p differences; inputs must be nonnegative

inline double envmap_loss(const float* est, const float* truth,
                          std::size_t len) {
  double s = 0;
  for (std::size_t i = 0; i < len; ++i) {
    check_usage(est[i] >= 0 && truth[i] >= 0,
                "envmap_loss: values must be nonnegative");
    const double d = std::log1p(double(est[i])) - std::log1p(double(truth[i]));
    s += d * d;
  }
  return s;
}

inline double envmap_loss(const std::vector<float>& est,
                          const std::vector<float>& truth) {
  check_usage(est.size() == truth.size(), "envmap_loss: length mismatch");
  return envmap_loss(est.data(), truth.data(), est.size());
}

inline std::vector<float> envmap_loss_grad(const float* est, const float* truth,
                                           std::size_t len) {
  std::vector<float> d(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double diff =
        std::log1p(double(est[i])) - std::log1p(double(truth[i]));
    d[i] = static_cast<float>(2.0 * diff / (1.0 + est[i]));
  }
  return d;
}

// --- direction / temperature ------------------------------------------------

inline double cosine_loss(double x_deg, double x_hat_deg) {
  // range-reduce first so the loss is exactly periodic in full turns
  const double d = std::remainder(x_deg - x_hat_deg, 360.0);
  return 1.0 - std::cos(d * kPi / 180.0);
}

// d loss / d x_hat
inline double cosine_loss_grad(double x_deg, double x_hat_deg) {
  const double d = std::remainder(x_deg - x_hat_deg, 360.0);
  return -(kPi / 180.0) * std::sin(d * kPi / 180.0);
}

inline double temperature_loss(double c, double c_hat) {
  const double d = c - c_hat;
  return d * d / (2000.0 * 2000.0);
}

// d loss / d c_hat
inline double temperature_loss_grad(double c, double c_hat) {
  return -2.0 * (c - c_hat) / (2000.0 * 2000.0);
}

// --- HSL-compact composite --------------------------------------------------
// layout: [hue, saturation, 512 brightness values]; hue compared on the
// circle (a full turn = 1), saturation by squared error, brightness by the
// envmap loss; unit weights

inline double hsl_envmap_loss(const float* est, const float* truth,
                              std::size_t len) {
  check_usage(len >= 3, "hsl_envmap_loss: need hue, saturation, brightness");
  return cosine_loss(360.0 * truth[0], 360.0 * est[0]) +
         (double(truth[1]) - est[1]) * (double(truth[1]) - est[1]) +
         envmap_loss(est + 2, truth + 2, len - 2);
}

inline double hsl_envmap_loss(const std::vector<float>& est,
                              const std::vector<float>& truth) {
  check_usage(est.size() == truth.size(), "hsl_envmap_loss: length mismatch");
  return hsl_envmap_loss(est.data(), truth.data(), est.size());
}

inline std::vector<float> hsl_envmap_loss_grad(const float* est,
                                               const float* truth,
                                               std::size_t len) {
  std::vector<float> d(len);
  d[0] = static_cast<float>(360.0 *
                            cosine_loss_grad(360.0 * truth[0], 360.0 * est[0]));
  d[1] = static_cast<float>(2.0 * (double(est[1]) - truth[1]));
  const std::vector<float> db = envmap_loss_grad(est + 2, truth + 2, len - 2);
  std::copy(db.begin(), db.end(), d.begin() + 2);
  return d;
}

// --- perceptual -------------------------------------------------------------

enum class PerceptualBackend { lpips_external, builtin_stand_in };

inline PerceptualBackend perceptual_backend_from_name(const std::string& s) {
  if (s == "lpips_external") return PerceptualBackend::lpips_external;
  if (s == "builtin_stand_in") return PerceptualBackend::builtin_stand_in;
  throw UsageError("unknown perceptual backend '" + s + "'");
}

inline Tensor avg_pool2(const Tensor& x) {
  check_usage(x.h % 2 == 0 && x.w % 2 == 0, "avg_pool2: odd extent");
  Tensor y(x.n, x.c, x.h / 2, x.w / 2);
  for (int n = 0; n < x.n; ++n) {
    for (int c = 0; c < x.c; ++c) {
      const float* src = x.chan(n, c);
      float* dst = y.chan(n, c);
      for (int i = 0; i < y.h; ++i) {
        for (int j = 0; j < y.w; ++j) {
          dst[i * y.w + j] =
              0.25f * (src[(2 * i) * x.w + 2 * j] +
                       src[(2 * i) * x.w + 2 * j + 1] +
                       src[(2 * i + 1) * x.w + 2 * j] +
                       src[(2 * i + 1) * x.w + 2 * j + 1]);
        }
      }
    }
  }
  return y;
}

namespace perceptual_detail {

inline double mse(const Tensor& a, const Tensor& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = double(a.v[i]) - b.v[i];
    s += d * d;
  }
  return s / a.size();
}

}  // namespace perceptual_detail

// Mean of per-level MSE on a 3-level average pyramid. NOT LPIPS: a stand-in
// so the envmap_scene loss runs without a pretrained perceptual network.
inline double perceptual_stand_in(const Tensor& a, const Tensor& b) {
  check_usage(same_shape_ok(a, b), "perceptual: shape mismatch");
  Tensor pa = a, pb = b;
  double s = perceptual_detail::mse(pa, pb);
  for (int level = 1; level < 3; ++level) {
    pa = avg_pool2(pa);
    pb = avg_pool2(pb);
    s += perceptual_detail::mse(pa, pb);
  }
  return s / 3.0;
}

inline Tensor perceptual_stand_in_grad(const Tensor& a, const Tensor& b) {
  Tensor grad(a.n, a.c, a.h, a.w);
  Tensor pa = a, pb = b;
  for (int level = 0; level < 3; ++level) {
    if (level > 0) {
      pa = avg_pool2(pa);
      pb = avg_pool2(pb);
    }
    const int scale = 1 << level;                 // block edge at this level
    const double back = 1.0 / (scale * scale);    // pooling adjoint weight
    const double coeff = 2.0 / (3.0 * pa.size()) * back;
    for (int n = 0; n < pa.n; ++n) {
      for (int c = 0; c < pa.c; ++c) {
        const float* da = pa.chan(n, c);
        const float* db = pb.chan(n, c);
        float* g = grad.chan(n, c);
        for (int i = 0; i < pa.h; ++i) {
          for (int j = 0; j < pa.w; ++j) {
            const double gd = coeff * (double(da[i * pa.w + j]) -
                                       db[i * pa.w + j]);
            for (int y = i * scale; y < (i + 1) * scale; ++y) {
              for (int x = j * scale; x < (j + 1) * scale; ++x) {
                g[y * grad.w + x] += static_cast<float>(gd);
              }
            }
          }
        }
      }
    }
  }
  return grad;
}

inline double perceptual_loss(const Tensor& a, const Tensor& b,
                              PerceptualBackend backend) {
  if (backend == PerceptualBackend::lpips_external) {
    throw UsageError(
        "perceptual backend 'lpips_external' needs a pretrained evaluator, "
        "which is not bundled; switch the config to 'builtin_stand_in' "
        "(3-level pyramid MSE, not LPIPS) or plug in an external evaluator");
  }
  return perceptual_stand_in(a, b);
}

// --- latent distance diagnostics -------------------------------------------

inline double l2_distance(const Tensor& a, const Tensor& b) {
  check_usage(same_shape_ok(a, b), "l2_distance: shape mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = double(a.v[i]) - b.v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// mean of the three pairwise l2 distances
inline double latent_pairwise_mean(const Tensor& a, const Tensor& b,
                                   const Tensor& c) {
  return (l2_distance(a, b) + l2_distance(a, c) + l2_distance(b, c)) / 3.0;
}

// normalized variant; a zero reference distance makes the value undefined
inline std::optional<double> latent_normalized(double pairwise_mean,
                                               double reference) {
  if (reference == 0) return std::nullopt;
  return pairwise_mean / reference;
}

}  // namespace relight
