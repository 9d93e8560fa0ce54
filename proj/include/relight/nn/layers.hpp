#pragma once
// NN layers with hand-written forward/backward. Conventions:
//  - Each layer caches what backward needs per "slot". The siamese encoder
//    runs the I pass in slot 0 and the T pass in slot 1; the discriminator
//    uses the slots for its real/fake passes. backward(dy, slot) consumes the
//    cache written by the matching forward.
//  - backward accumulates into parameter grads (zero them between steps) and
//    returns the gradient w.r.t. the layer input. Calling backward twice for
//    the two slots therefore sums parameter gradients across the passes,
//    which is exactly what shared (siamese) weights need.
//  - No autograd: the model classes wire layers explicitly.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "relight/common.hpp"
#include "relight/nn/gemm.hpp"
#include "relight/rng.hpp"
#include "relight/tensor.hpp"

namespace relight::nn {

inline constexpr int kSlots = 2;

struct ParamRef {
  std::string name;
  Tensor* value;
  Tensor* grad;      // null for non-trainable state (BN running stats)
  bool trainable;
};

struct Layer {
  virtual ~Layer() = default;
  virtual Tensor forward(const Tensor& x, bool training, int slot) = 0;
  virtual Tensor backward(const Tensor& dy, int slot) = 0;
  virtual void collect_params(const std::string& prefix,
                              std::vector<ParamRef>& out) {}
  virtual void init_params(Rng& rng) {}
  virtual const char* kind() const = 0;
};

inline int conv_out_extent(int in, int k, int stride, int pad) {
  return (in + 2 * pad - k) / stride + 1;
}

namespace detail {

// cols has K = C*k*k rows and P = oh*ow columns; row order is (c, ky, kx).
inline void im2col(const float* x, int C, int H, int W, int k, int stride,
                   int pad, int oh, int ow, float* cols) {
  const std::size_t P = static_cast<std::size_t>(oh) * ow;
  for (int c = 0; c < C; ++c) {
    const float* xc = x + static_cast<std::size_t>(c) * H * W;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        float* row = cols + ((static_cast<std::size_t>(c) * k + ky) * k + kx) * P;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride - pad + ky;
          float* dst = row + static_cast<std::size_t>(oy) * ow;
          if (iy < 0 || iy >= H) {
            std::fill(dst, dst + ow, 0.0f);
            continue;
          }
          const float* src = xc + static_cast<std::size_t>(iy) * W;
          if (stride == 1) {
            // contiguous run with edge clamping
            const int ix0 = -pad + kx;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ix0 + ox;
              dst[ox] = (ix >= 0 && ix < W) ? src[ix] : 0.0f;
            }
          } else {
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * stride - pad + kx;
              dst[ox] = (ix >= 0 && ix < W) ? src[ix] : 0.0f;
            }
          }
        }
      }
    }
  }
}

// scatter-add of column gradients back into the input gradient
inline void col2im(const float* cols, int C, int H, int W, int k, int stride,
                   int pad, int oh, int ow, float* dx) {
  const std::size_t P = static_cast<std::size_t>(oh) * ow;
  for (int c = 0; c < C; ++c) {
    float* xc = dx + static_cast<std::size_t>(c) * H * W;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const float* row =
            cols + ((static_cast<std::size_t>(c) * k + ky) * k + kx) * P;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride - pad + ky;
          if (iy < 0 || iy >= H) continue;
          const float* src = row + static_cast<std::size_t>(oy) * ow;
          float* dst = xc + static_cast<std::size_t>(iy) * W;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride - pad + kx;
            if (ix >= 0 && ix < W) dst[ix] += src[ox];
          }
        }
      }
    }
  }
}

}  // namespace detail

class Conv2d : public Layer {
 public:
  Conv2d(int in_ch, int out_ch, int k, int stride, int pad)
      : in_ch_(in_ch), out_ch_(out_ch), k_(k), stride_(stride), pad_(pad),
        weight_(1, out_ch, 1, in_ch * k * k), bias_(1, out_ch, 1, 1),
        g_weight_(1, out_ch, 1, in_ch * k * k), g_bias_(1, out_ch, 1, 1) {}

  const char* kind() const override { return "conv"; }

  void init_params(Rng& rng) override {
    // He-normal for the post-ReLU stacks used everywhere in this project
    const double std = std::sqrt(2.0 / (in_ch_ * k_ * k_));
    for (float& v : weight_.v) v = static_cast<float>(rng.normal(0.0, std));
    bias_.zero();
  }

  void init_normal(Rng& rng, double std) {
    for (float& v : weight_.v) v = static_cast<float>(rng.normal(0.0, std));
    bias_.zero();
  }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    check_run(x.c == in_ch_, "conv: expected " + std::to_string(in_ch_) +
                                 " input channels, got " + x.shape_str());
    check_run(x.h + 2 * pad_ >= k_ && x.w + 2 * pad_ >= k_,
              "conv: input smaller than kernel");
    const int oh = conv_out_extent(x.h, k_, stride_, pad_);
    const int ow = conv_out_extent(x.w, k_, stride_, pad_);
    Tensor y(x.n, out_ch_, oh, ow);
    const std::size_t P = static_cast<std::size_t>(oh) * ow;
    const int K = in_ch_ * k_ * k_;
    const bool pointwise = (k_ == 1 && stride_ == 1 && pad_ == 0);
    if (!pointwise) {
      scratch(0).resize(static_cast<std::size_t>(K) * P);
    }
    for (int n = 0; n < x.n; ++n) {
      const float* cols;
      if (pointwise) {
        cols = x.sample(n);
      } else {
        detail::im2col(x.sample(n), in_ch_, x.h, x.w, k_, stride_, pad_, oh, ow,
                       scratch(0).data());
        cols = scratch(0).data();
      }
      matmul(weight_.data(), cols, y.sample(n), out_ch_, K, static_cast<int>(P));
      for (int o = 0; o < out_ch_; ++o) {
        float* row = y.chan(n, o);
        const float b = bias_.v[o];
        for (std::size_t p = 0; p < P; ++p) row[p] += b;
      }
    }
    if (training) cache_[slot] = x;
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    const Tensor& x = cache_[slot];
    check_run(x.size() > 0, "conv backward: no cached forward for slot");
    const int oh = dy.h, ow = dy.w;
    const std::size_t P = static_cast<std::size_t>(oh) * ow;
    const int K = in_ch_ * k_ * k_;
    const bool pointwise = (k_ == 1 && stride_ == 1 && pad_ == 0);
    Tensor dx(x.n, x.c, x.h, x.w);
    if (!pointwise) {
      scratch(0).resize(static_cast<std::size_t>(K) * P);
      scratch(1).resize(static_cast<std::size_t>(K) * P);
    }
    for (int n = 0; n < x.n; ++n) {
      const float* cols;
      if (pointwise) {
        cols = x.sample(n);
      } else {
        detail::im2col(x.sample(n), in_ch_, x.h, x.w, k_, stride_, pad_, oh, ow,
                       scratch(0).data());
        cols = scratch(0).data();
      }
      // dW += dy_n cols^T ; db += row sums of dy_n
      matmul_nt_acc(dy.sample(n), cols, g_weight_.data(), out_ch_,
                    static_cast<int>(P), K);
      for (int o = 0; o < out_ch_; ++o) {
        const float* row = dy.chan(n, o);
        float s = 0;
        for (std::size_t p = 0; p < P; ++p) s += row[p];
        g_bias_.v[o] += s;
      }
      // dcols = W^T dy_n, scattered back to dx
      if (pointwise) {
        matmul_tn(weight_.data(), dy.sample(n), dx.sample(n), K, out_ch_,
                  static_cast<int>(P));
      } else {
        matmul_tn(weight_.data(), dy.sample(n), scratch(1).data(), K, out_ch_,
                  static_cast<int>(P));
        detail::col2im(scratch(1).data(), in_ch_, x.h, x.w, k_, stride_, pad_,
                       oh, ow, dx.sample(n));
      }
    }
    return dx;
  }

  void collect_params(const std::string& prefix,
                      std::vector<ParamRef>& out) override {
    out.push_back({prefix + "/weight", &weight_, &g_weight_, true});
    out.push_back({prefix + "/bias", &bias_, &g_bias_, true});
  }

  int out_channels() const { return out_ch_; }

 private:
  int in_ch_, out_ch_, k_, stride_, pad_;
  Tensor weight_, bias_, g_weight_, g_bias_;
  std::array<Tensor, kSlots> cache_;
};

class BatchNorm2d : public Layer {
 public:
  explicit BatchNorm2d(int ch, float momentum = 0.1f, float eps = 1e-5f)
      : ch_(ch), momentum_(momentum), eps_(eps), gamma_(1, ch, 1, 1),
        beta_(1, ch, 1, 1), g_gamma_(1, ch, 1, 1), g_beta_(1, ch, 1, 1),
        running_mean_(1, ch, 1, 1), running_var_(1, ch, 1, 1) {
    gamma_.fill(1.0f);
    running_var_.fill(1.0f);
  }

  const char* kind() const override { return "batchnorm"; }

  void init_params(Rng&) override {
    gamma_.fill(1.0f);
    beta_.zero();
    running_mean_.zero();
    running_var_.fill(1.0f);
  }

  void init_normal(Rng& rng, double mean, double std) {
    for (float& v : gamma_.v) v = static_cast<float>(rng.normal(mean, std));
    beta_.zero();
  }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    check_run(x.c == ch_, "batchnorm: channel mismatch " + x.shape_str());
    Tensor y(x.n, x.c, x.h, x.w);
    const std::size_t plane = x.plane();
    const std::size_t m = static_cast<std::size_t>(x.n) * plane;
    if (!training) {
      for (int c = 0; c < ch_; ++c) {
        const float scale =
            gamma_.v[c] / std::sqrt(running_var_.v[c] + eps_);
        const float shift = beta_.v[c] - running_mean_.v[c] * scale;
        for (int n = 0; n < x.n; ++n) {
          const float* src = x.chan(n, c);
          float* dst = y.chan(n, c);
          for (std::size_t p = 0; p < plane; ++p) dst[p] = src[p] * scale + shift;
        }
      }
      return y;
    }
    Cache& cc = cache_[slot];
    cc.xhat = Tensor(x.n, x.c, x.h, x.w);
    cc.inv_std.resize(ch_);
    for (int c = 0; c < ch_; ++c) {
      double sum = 0, sum2 = 0;
      for (int n = 0; n < x.n; ++n) {
        const float* src = x.chan(n, c);
        for (std::size_t p = 0; p < plane; ++p) {
          sum += src[p];
          sum2 += static_cast<double>(src[p]) * src[p];
        }
      }
      const double mean = sum / m;
      const double var = std::max(0.0, sum2 / m - mean * mean);  // biased
      const float inv_std = static_cast<float>(1.0 / std::sqrt(var + eps_));
      cc.inv_std[c] = inv_std;
      const float g = gamma_.v[c], b = beta_.v[c], mu = static_cast<float>(mean);
      for (int n = 0; n < x.n; ++n) {
        const float* src = x.chan(n, c);
        float* xh = cc.xhat.chan(n, c);
        float* dst = y.chan(n, c);
        for (std::size_t p = 0; p < plane; ++p) {
          const float v = (src[p] - mu) * inv_std;
          xh[p] = v;
          dst[p] = g * v + b;
        }
      }
      running_mean_.v[c] = (1 - momentum_) * running_mean_.v[c] +
                           momentum_ * static_cast<float>(mean);
      running_var_.v[c] =
          (1 - momentum_) * running_var_.v[c] + momentum_ * static_cast<float>(var);
    }
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    Cache& cc = cache_[slot];
    check_run(cc.xhat.same_shape(dy), "batchnorm backward: no matching cache");
    const std::size_t plane = dy.plane();
    const double m = static_cast<double>(dy.n) * plane;
    Tensor dx(dy.n, dy.c, dy.h, dy.w);
    for (int c = 0; c < ch_; ++c) {
      double sum_dy = 0, sum_dy_xhat = 0;
      for (int n = 0; n < dy.n; ++n) {
        const float* d = dy.chan(n, c);
        const float* xh = cc.xhat.chan(n, c);
        for (std::size_t p = 0; p < plane; ++p) {
          sum_dy += d[p];
          sum_dy_xhat += static_cast<double>(d[p]) * xh[p];
        }
      }
      g_beta_.v[c] += static_cast<float>(sum_dy);
      g_gamma_.v[c] += static_cast<float>(sum_dy_xhat);
      const float k1 = static_cast<float>(sum_dy / m);
      const float k2 = static_cast<float>(sum_dy_xhat / m);
      const float scale = gamma_.v[c] * cc.inv_std[c];
      for (int n = 0; n < dy.n; ++n) {
        const float* d = dy.chan(n, c);
        const float* xh = cc.xhat.chan(n, c);
        float* o = dx.chan(n, c);
        for (std::size_t p = 0; p < plane; ++p) {
          o[p] = scale * (d[p] - k1 - xh[p] * k2);
        }
      }
    }
    return dx;
  }

  void collect_params(const std::string& prefix,
                      std::vector<ParamRef>& out) override {
    out.push_back({prefix + "/gamma", &gamma_, &g_gamma_, true});
    out.push_back({prefix + "/beta", &beta_, &g_beta_, true});
    out.push_back({prefix + "/running_mean", &running_mean_, nullptr, false});
    out.push_back({prefix + "/running_var", &running_var_, nullptr, false});
  }

 private:
  struct Cache {
    Tensor xhat;
    std::vector<float> inv_std;
  };
  int ch_;
  float momentum_, eps_;
  Tensor gamma_, beta_, g_gamma_, g_beta_, running_mean_, running_var_;
  std::array<Cache, kSlots> cache_;
};

class ReLU : public Layer {
 public:
  const char* kind() const override { return "relu"; }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    Tensor y(x.n, x.c, x.h, x.w);
    auto& mask = mask_[slot];
    if (training) mask.assign(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const bool pos = x.v[i] > 0.0f;
      y.v[i] = pos ? x.v[i] : 0.0f;
      if (training && pos) mask[i] = 1;
    }
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    const auto& mask = mask_[slot];
    check_run(mask.size() == dy.size(), "relu backward: no matching cache");
    Tensor dx(dy.n, dy.c, dy.h, dy.w);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      dx.v[i] = mask[i] ? dy.v[i] : 0.0f;
    }
    return dx;
  }

 private:
  std::array<std::vector<std::uint8_t>, kSlots> mask_;
};

class LeakyReLU : public Layer {
 public:
  explicit LeakyReLU(float alpha = 0.2f) : alpha_(alpha) {}

  const char* kind() const override { return "leaky_relu"; }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    Tensor y(x.n, x.c, x.h, x.w);
    auto& mask = mask_[slot];
    if (training) mask.assign(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const bool pos = x.v[i] > 0.0f;
      y.v[i] = pos ? x.v[i] : alpha_ * x.v[i];
      if (training && pos) mask[i] = 1;
    }
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    const auto& mask = mask_[slot];
    check_run(mask.size() == dy.size(), "leaky_relu backward: no cache");
    Tensor dx(dy.n, dy.c, dy.h, dy.w);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      dx.v[i] = mask[i] ? dy.v[i] : alpha_ * dy.v[i];
    }
    return dx;
  }

 private:
  float alpha_;
  std::array<std::vector<std::uint8_t>, kSlots> mask_;
};

class Sigmoid : public Layer {
 public:
  const char* kind() const override { return "sigmoid"; }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    Tensor y(x.n, x.c, x.h, x.w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      y.v[i] = 1.0f / (1.0f + std::exp(-x.v[i]));
    }
    if (training) cache_[slot] = y;
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    const Tensor& y = cache_[slot];
    check_run(y.same_shape(dy), "sigmoid backward: no matching cache");
    Tensor dx(dy.n, dy.c, dy.h, dy.w);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      dx.v[i] = dy.v[i] * y.v[i] * (1.0f - y.v[i]);
    }
    return dx;
  }

 private:
  std::array<Tensor, kSlots> cache_;
};

enum class UpsampleMode { nearest, bilinear };

// x2 spatial upsampling. Nearest is the default everywhere (checkerboard-safe
// with the conv that follows); bilinear uses half-pixel centers.
class UpsampleX2 : public Layer {
 public:
  explicit UpsampleX2(UpsampleMode mode = UpsampleMode::nearest) : mode_(mode) {}

  const char* kind() const override {
    return mode_ == UpsampleMode::nearest ? "upsample_nearest"
                                          : "upsample_bilinear";
  }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    if (training) in_shape_[slot] = {x.n, x.c, x.h, x.w};
    Tensor y(x.n, x.c, x.h * 2, x.w * 2);
    if (mode_ == UpsampleMode::nearest) {
      for (int n = 0; n < x.n; ++n) {
        for (int c = 0; c < x.c; ++c) {
          const float* src = x.chan(n, c);
          float* dst = y.chan(n, c);
          for (int i = 0; i < x.h; ++i) {
            for (int j = 0; j < x.w; ++j) {
              const float v = src[i * x.w + j];
              float* d = dst + (2 * i) * y.w + 2 * j;
              d[0] = v;
              d[1] = v;
              d[y.w] = v;
              d[y.w + 1] = v;
            }
          }
        }
      }
      return y;
    }
    for (int n = 0; n < x.n; ++n) {
      for (int c = 0; c < x.c; ++c) {
        const float* src = x.chan(n, c);
        float* dst = y.chan(n, c);
        for (int oy = 0; oy < y.h; ++oy) {
          const double sy = (oy + 0.5) * 0.5 - 0.5;
          const int y0 = std::clamp(static_cast<int>(std::floor(sy)), 0, x.h - 1);
          const int y1 = std::min(y0 + 1, x.h - 1);
          const double fy = std::clamp(sy - y0, 0.0, 1.0);
          for (int ox = 0; ox < y.w; ++ox) {
            const double sx = (ox + 0.5) * 0.5 - 0.5;
            const int x0 = std::clamp(static_cast<int>(std::floor(sx)), 0, x.w - 1);
            const int x1 = std::min(x0 + 1, x.w - 1);
            const double fx = std::clamp(sx - x0, 0.0, 1.0);
            dst[oy * y.w + ox] = static_cast<float>(
                (1 - fy) * ((1 - fx) * src[y0 * x.w + x0] + fx * src[y0 * x.w + x1]) +
                fy * ((1 - fx) * src[y1 * x.w + x0] + fx * src[y1 * x.w + x1]));
          }
        }
      }
    }
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    const auto [n_, c_, h_, w_] = in_shape_[slot];
    check_run(n_ == dy.n && c_ == dy.c && h_ * 2 == dy.h && w_ * 2 == dy.w,
              "upsample backward: no matching cache");
    Tensor dx(n_, c_, h_, w_);
    if (mode_ == UpsampleMode::nearest) {
      for (int n = 0; n < dx.n; ++n) {
        for (int c = 0; c < dx.c; ++c) {
          const float* src = dy.chan(n, c);
          float* dst = dx.chan(n, c);
          for (int i = 0; i < dx.h; ++i) {
            for (int j = 0; j < dx.w; ++j) {
              const float* s = src + (2 * i) * dy.w + 2 * j;
              dst[i * dx.w + j] = s[0] + s[1] + s[dy.w] + s[dy.w + 1];
            }
          }
        }
      }
      return dx;
    }
    for (int n = 0; n < dx.n; ++n) {
      for (int c = 0; c < dx.c; ++c) {
        const float* src = dy.chan(n, c);
        float* dst = dx.chan(n, c);
        for (int oy = 0; oy < dy.h; ++oy) {
          const double sy = (oy + 0.5) * 0.5 - 0.5;
          const int y0 = std::clamp(static_cast<int>(std::floor(sy)), 0, dx.h - 1);
          const int y1 = std::min(y0 + 1, dx.h - 1);
          const double fy = std::clamp(sy - y0, 0.0, 1.0);
          for (int ox = 0; ox < dy.w; ++ox) {
            const double sx = (ox + 0.5) * 0.5 - 0.5;
            const int x0 = std::clamp(static_cast<int>(std::floor(sx)), 0, dx.w - 1);
            const int x1 = std::min(x0 + 1, dx.w - 1);
            const double fx = std::clamp(sx - x0, 0.0, 1.0);
            const float g = src[oy * dy.w + ox];
            dst[y0 * dx.w + x0] += static_cast<float>((1 - fy) * (1 - fx) * g);
            dst[y0 * dx.w + x1] += static_cast<float>((1 - fy) * fx * g);
            dst[y1 * dx.w + x0] += static_cast<float>(fy * (1 - fx) * g);
            dst[y1 * dx.w + x1] += static_cast<float>(fy * fx * g);
          }
        }
      }
    }
    return dx;
  }

 private:
  UpsampleMode mode_;
  std::array<std::array<int, 4>, kSlots> in_shape_{};
};

// Fully connected layer; flattens whatever sample shape it is given as long
// as the per-sample element count matches in_features.
class Linear : public Layer {
 public:
  Linear(int in_features, int out_features)
      : in_(in_features), out_(out_features), weight_(1, out_features, 1, in_features),
        bias_(1, out_features, 1, 1), g_weight_(1, out_features, 1, in_features),
        g_bias_(1, out_features, 1, 1) {}

  const char* kind() const override { return "linear"; }

  void init_params(Rng& rng) override {
    const double std = std::sqrt(2.0 / in_);
    for (float& v : weight_.v) v = static_cast<float>(rng.normal(0.0, std));
    bias_.zero();
  }

  Tensor forward(const Tensor& x, bool training, int slot) override {
    check_run(static_cast<int>(x.sample_size()) == in_,
              "linear: expected " + std::to_string(in_) +
                  " features per sample, got " + x.shape_str());
    Tensor y(x.n, out_, 1, 1);
    matmul_nt(x.data(), weight_.data(), y.data(), x.n, in_, out_);
    for (int n = 0; n < x.n; ++n) {
      float* row = y.sample(n);
      for (int o = 0; o < out_; ++o) row[o] += bias_.v[o];
    }
    if (training) cache_[slot] = x;
    return y;
  }

  Tensor backward(const Tensor& dy, int slot) override {
    const Tensor& x = cache_[slot];
    check_run(x.size() > 0 && dy.n == x.n && dy.c == out_,
              "linear backward: no matching cache");
    // dW += dy^T x ; db += column sums ; dx = dy W
    matmul_tn_acc(dy.data(), x.data(), g_weight_.data(), out_, x.n, in_);
    for (int n = 0; n < x.n; ++n) {
      const float* row = dy.sample(n);
      for (int o = 0; o < out_; ++o) g_bias_.v[o] += row[o];
    }
    Tensor dx(x.n, x.c, x.h, x.w);
    matmul(dy.data(), weight_.data(), dx.data(), x.n, out_, in_);
    return dx;
  }

  void collect_params(const std::string& prefix,
                      std::vector<ParamRef>& out) override {
    out.push_back({prefix + "/weight", &weight_, &g_weight_, true});
    out.push_back({prefix + "/bias", &bias_, &g_bias_, true});
  }

 private:
  int in_, out_;
  Tensor weight_, bias_, g_weight_, g_bias_;
  std::array<Tensor, kSlots> cache_;
};

// channel concatenation: (n, ca, h, w) + (n, cb, h, w) -> (n, ca+cb, h, w)
inline Tensor concat_channels(const Tensor& a, const Tensor& b) {
  check_run(a.n == b.n && a.h == b.h && a.w == b.w,
            "concat: spatial/batch mismatch " + a.shape_str() + " vs " +
                b.shape_str());
  Tensor y(a.n, a.c + b.c, a.h, a.w);
  for (int n = 0; n < a.n; ++n) {
    std::copy(a.sample(n), a.sample(n) + a.sample_size(),
              y.sample(n));
    std::copy(b.sample(n), b.sample(n) + b.sample_size(),
              y.sample(n) + a.sample_size());
  }
  return y;
}

// inverse of concat_channels for gradients; either side may be empty
inline std::pair<Tensor, Tensor> split_channels(const Tensor& x, int c_first) {
  check_run(c_first >= 0 && c_first <= x.c, "split: bad channel split");
  Tensor a(x.n, c_first, x.h, x.w);
  Tensor b(x.n, x.c - c_first, x.h, x.w);
  for (int n = 0; n < x.n; ++n) {
    std::copy(x.sample(n), x.sample(n) + a.sample_size(), a.sample(n));
    std::copy(x.sample(n) + a.sample_size(), x.sample(n) + x.sample_size(),
              b.sample(n));
  }
  return {std::move(a), std::move(b)};
}

}  // namespace relight::nn
