#pragma once
// The relighting network: a siamese encoder (shared weights, two cached
// activation slots for the I and T passes), a latent code split by channel
// into scene and light parts, and a skip-connected decoder that upsamples
// with nearest-neighbor + convolution (no transposed convolutions anywhere).
//
// Layer schedule, 11 weight layers per half. Encoder at input size S:
//   conv3(3->64) @S | s2 conv3(64->128) + conv3(128->128) @S/2  -> skip 0
//                   | s2 conv3(128->256) + conv3(256->256) @S/4 -> skip 1
//                   | s2 conv3(256->512) + conv3(512->512) @S/8 -> skip 2
//                   | s2 conv3(512->512) + conv3(512->512) @S/16
//                   | conv1(512->latent) + conv1(latent->latent)
// Decoder mirrors it with x2 upsampling, skip concatenation at S/8, S/4 and
// S/2, and a final conv3(64->3) + sigmoid.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relight/nn/layers.hpp"
#include "relight/rng.hpp"
#include "relight/tensor.hpp"
#include "relight/variant.hpp"

namespace relight {

// conv + batchnorm + relu, the building block of both halves
class ConvBlock {
 public:
  ConvBlock(int in_ch, int out_ch, int k, int stride, const VariantConfig& cfg)
      : conv_(in_ch, out_ch, k, stride, k / 2),
        bn_(out_ch, cfg.bn_momentum, cfg.bn_eps) {}

  Tensor forward(const Tensor& x, bool training, int slot) {
    Tensor y = conv_.forward(x, training, slot);
    y = bn_.forward(y, training, slot);
    return relu_.forward(y, training, slot);
  }
  Tensor backward(const Tensor& dy, int slot) {
    Tensor dx = relu_.backward(dy, slot);
    dx = bn_.backward(dx, slot);
    return conv_.backward(dx, slot);
  }
  void collect_params(const std::string& prefix, std::vector<nn::ParamRef>& out) {
    conv_.collect_params(prefix + "/conv", out);
    bn_.collect_params(prefix + "/bn", out);
  }
  void init_params(Rng& rng) {
    conv_.init_params(rng);
    bn_.init_params(rng);
  }
  std::vector<const char*> kinds() const {
    return {conv_.kind(), bn_.kind(), relu_.kind()};
  }

 private:
  nn::Conv2d conv_;
  nn::BatchNorm2d bn_;
  nn::ReLU relu_;
};

// Encoder output (or a gradient with the same layout). An empty tensor in a
// gradient position means zero; scene is empty by construction when the
// variant has no scene channels.
struct LatentCode {
  Tensor scene;                // (n, scene_channels, S/16, S/16)
  Tensor light;                // (n, light_channels, S/16, S/16)
  std::vector<Tensor> skips;   // 128ch @S/2, 256ch @S/4, 512ch @S/8
};

inline bool same_layout(const Tensor& a, const Tensor& b) {
  return a.n == b.n && a.c == b.c && a.h == b.h && a.w == b.w;
}

// The decoder's input for relighting: scene and skips from I, light from T.
inline LatentCode swap_latent(const LatentCode& code_i,
                              const LatentCode& code_t) {
  check_usage(same_layout(code_i.light, code_t.light) &&
                  same_layout(code_i.scene, code_t.scene) &&
                  code_i.skips.size() == code_t.skips.size(),
              "swap_latent: codes come from different configurations");
  LatentCode out;
  out.scene = code_i.scene;
  out.light = code_t.light;
  out.skips = code_i.skips;
  return out;
}

// --- weighted pooling -------------------------------------------------------
// The light tensor is [weight_ch weight channels | value_ch value channels];
// pooled[j] = sum_xy w[j mod weight_ch](x,y) * v[j](x,y). With weight_ch ==
// value_ch this is plain 1:1 pairing; the 2028-channel layout reuses its 492
// weight channels cyclically over 1536 value channels.

inline Tensor weighted_pool(const Tensor& light, int weight_ch, int value_ch) {
  check_usage(weight_ch >= 1 && value_ch >= 1 &&
                  light.c == weight_ch + value_ch,
              "weighted_pool: channel layout mismatch (" + light.shape_str() +
                  " vs " + std::to_string(weight_ch) + "+" +
                  std::to_string(value_ch) + ")");
  Tensor pooled = Tensor::vec(light.n, value_ch);
  const std::size_t plane = light.plane();
  for (int n = 0; n < light.n; ++n) {
    for (int j = 0; j < value_ch; ++j) {
      const float* w = light.chan(n, j % weight_ch);
      const float* v = light.chan(n, weight_ch + j);
      double s = 0;
      for (std::size_t i = 0; i < plane; ++i) s += double(w[i]) * v[i];
      pooled.sample(n)[j] = static_cast<float>(s);
    }
  }
  return pooled;
}

inline Tensor weighted_pool_backward(const Tensor& light, const Tensor& dpooled,
                                     int weight_ch, int value_ch) {
  check_run(dpooled.n == light.n &&
                static_cast<int>(dpooled.sample_size()) == value_ch,
            "weighted_pool_backward: gradient shape mismatch");
  Tensor dlight(light.n, light.c, light.h, light.w);
  const std::size_t plane = light.plane();
  for (int n = 0; n < light.n; ++n) {
    for (int j = 0; j < value_ch; ++j) {
      const float g = dpooled.sample(n)[j];
      const float* w = light.chan(n, j % weight_ch);
      const float* v = light.chan(n, weight_ch + j);
      float* dw = dlight.chan(n, j % weight_ch);
      float* dv = dlight.chan(n, weight_ch + j);
      for (std::size_t i = 0; i < plane; ++i) {
        dv[i] += g * w[i];
        dw[i] += g * v[i];
      }
    }
  }
  return dlight;
}

// 1536 pooled values -> (n, 3, 16, 32) RGB environment map. The pooled order
// (R block, G block, B block, each row-major 16x32) is exactly the tensor's
// memory layout, so this is a reshape.
inline Tensor pooled_to_envmap_rgb(const Tensor& pooled) {
  check_run(static_cast<int>(pooled.sample_size()) == 3 * 512,
            "pooled_to_envmap_rgb: expected 1536 values");
  Tensor map(pooled.n, 3, 16, 32);
  map.v = pooled.v;
  return map;
}

struct IlluminationPrediction {
  double direction_degrees = 0;
  double temperature_kelvin = 0;
};

// flatten(light) -> 20 -> 10 -> 2 (direction degrees, temperature Kelvin),
// ReLU between layers, linear outputs.
class IlluminationHead {
 public:
  explicit IlluminationHead(int in_features)
      : fc1_(in_features, 20), fc2_(20, 10), fc3_(10, 2) {}

  Tensor forward(const Tensor& light, bool training, int slot) {
    Tensor y = fc1_.forward(light, training, slot);
    y = relu1_.forward(y, training, slot);
    y = fc2_.forward(y, training, slot);
    y = relu2_.forward(y, training, slot);
    return fc3_.forward(y, training, slot);  // (n, 2)
  }
  Tensor backward(const Tensor& dy, int slot) {
    Tensor dx = fc3_.backward(dy, slot);
    dx = relu2_.backward(dx, slot);
    dx = fc2_.backward(dx, slot);
    dx = relu1_.backward(dx, slot);
    return fc1_.backward(dx, slot);  // gradient in the light tensor's shape
  }
  void collect_params(const std::string& prefix, std::vector<nn::ParamRef>& out) {
    fc1_.collect_params(prefix + "/fc1", out);
    fc2_.collect_params(prefix + "/fc2", out);
    fc3_.collect_params(prefix + "/fc3", out);
  }
  void init_params(Rng& rng) {
    fc1_.init_params(rng);
    fc2_.init_params(rng);
    fc3_.init_params(rng);
  }

 private:
  nn::Linear fc1_, fc2_, fc3_;
  nn::ReLU relu1_, relu2_;
};

// Everything the inference-time relight produces besides the image.
struct RelightResult {
  Tensor g_hat;
  LatentCode code_i, code_t;
  Tensor pooled_i, pooled_t;  // (n, pool_value_channels) for envmap variants
  Tensor pred_i, pred_t;      // (n, 2) for illum_predicter
};

class RelightModel {
 public:
  explicit RelightModel(const VariantConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    build();
  }

  const VariantConfig& config() const { return cfg_; }

  // slot 0 is the I pass, slot 1 the T pass (shared parameters; separate
  // activation caches so both backwards can run)
  LatentCode encode(const Tensor& image, bool training, int slot) {
    check_usage(image.c == 3 && image.h == cfg_.image_size &&
                    image.w == cfg_.image_size && image.n >= 1,
                "encode: expected (n,3," + std::to_string(cfg_.image_size) +
                    "," + std::to_string(cfg_.image_size) + "), got " +
                    image.shape_str());
    LatentCode code;
    Tensor x = image;
    for (int i = 0; i < static_cast<int>(enc_.size()); ++i) {
      x = enc_[i]->forward(x, training, slot);
      if (i == 2 || i == 4 || i == 6) code.skips.push_back(x);
    }
    auto [scene, light] = nn::split_channels(x, cfg_.scene_channels);
    code.scene = std::move(scene);
    code.light = std::move(light);
    return code;
  }

  // Accumulates parameter gradients for one encoder pass. `grad` mirrors the
  // code produced by encode() in that slot; empty tensors mean zero.
  void encode_backward(const LatentCode& grad, int slot) {
    const int e = cfg_.latent_extent();
    const int n = batch_of(grad);
    Tensor dscene = grad.scene.v.empty()
                        ? Tensor(n, cfg_.scene_channels, e, e)
                        : grad.scene;
    Tensor dlight = grad.light.v.empty()
                        ? Tensor(n, cfg_.light_channels, e, e)
                        : grad.light;
    Tensor dx = nn::concat_channels(dscene, dlight);
    for (int i = static_cast<int>(enc_.size()) - 1; i >= 0; --i) {
      dx = enc_[i]->backward(dx, slot);
      const int skip = i == 7 ? 2 : i == 5 ? 1 : i == 3 ? 0 : -1;
      if (skip >= 0 && static_cast<std::size_t>(skip) < grad.skips.size() &&
          !grad.skips[skip].v.empty()) {
        dx.add(grad.skips[skip]);
      }
    }
  }

  Tensor decode(const LatentCode& code, bool training) {
    check_usage(code.skips.size() == 3, "decode: code is missing skips");
    check_usage(code.light.c == cfg_.light_channels &&
                    code.light.h == cfg_.latent_extent(),
                "decode: latent does not match this configuration");
    const int slot = 0;  // the decoder runs once per iteration
    Tensor x = nn::concat_channels(code.scene.v.empty()
                                       ? Tensor(code.light.n,
                                                cfg_.scene_channels,
                                                code.light.h, code.light.w)
                                       : code.scene,
                                   code.light);
    x = dec_[0]->forward(x, training, slot);
    x = dec_[1]->forward(x, training, slot);
    for (int stage = 0; stage < 4; ++stage) {
      x = up_[stage]->forward(x, training, slot);
      if (stage < 3) x = nn::concat_channels(x, code.skips[2 - stage]);
      x = dec_[2 + 2 * stage]->forward(x, training, slot);
      x = dec_[3 + 2 * stage]->forward(x, training, slot);
    }
    x = out_conv_->forward(x, training, slot);
    return out_act_->forward(x, training, slot);
  }

  // Gradient of the decoder input given dL/d(decoded image); accumulates the
  // decoder's parameter gradients.
  LatentCode decode_backward(const Tensor& dy) {
    const int slot = 0;
    LatentCode grad;
    grad.skips.resize(3);
    Tensor dx = out_act_->backward(dy, slot);
    dx = out_conv_->backward(dx, slot);
    for (int stage = 3; stage >= 0; --stage) {
      dx = dec_[3 + 2 * stage]->backward(dx, slot);
      dx = dec_[2 + 2 * stage]->backward(dx, slot);
      if (stage < 3) {
        auto [dmain, dskip] = nn::split_channels(dx, dx.c - skip_ch_[2 - stage]);
        grad.skips[2 - stage] = std::move(dskip);
        dx = std::move(dmain);
      }
      dx = up_[stage]->backward(dx, slot);
    }
    dx = dec_[1]->backward(dx, slot);
    dx = dec_[0]->backward(dx, slot);
    auto [dscene, dlight] = nn::split_channels(dx, cfg_.scene_channels);
    grad.scene = std::move(dscene);
    grad.light = std::move(dlight);
    return grad;
  }

  bool has_head() const { return head_ != nullptr; }

  // (n, 2) raw head outputs for a light tensor from encode()
  Tensor predict_raw(const Tensor& light, bool training, int slot) {
    check_usage(has_head(), "predict_illumination: wrong variant (" +
                                std::string(variant_name(cfg_.variant)) + ")");
    return head_->forward(light, training, slot);
  }

  Tensor predict_backward(const Tensor& dy, int slot) {
    check_usage(has_head(), "predict_backward: wrong variant");
    return head_->backward(dy, slot);
  }

  IlluminationPrediction predict_illumination(const Tensor& light) {
    const Tensor y = predict_raw(light, false, 0);
    check_usage(y.n == 1, "predict_illumination: expected a single sample");
    return {y.v[0], y.v[1]};
  }

  // Weighted pooling of a light tensor under this variant's layout.
  Tensor pool(const Tensor& light) const {
    check_usage(cfg_.pool_weight_channels > 0,
                "pool: variant has no pooling layout");
    return weighted_pool(light, cfg_.pool_weight_channels,
                         cfg_.pool_value_channels);
  }
  Tensor pool_backward(const Tensor& light, const Tensor& dpooled) const {
    return weighted_pool_backward(light, dpooled, cfg_.pool_weight_channels,
                                  cfg_.pool_value_channels);
  }

  // Inference-mode relight of a batch: G_hat plus the per-variant extras.
  RelightResult relight(const Tensor& image_i, const Tensor& image_t) {
    RelightResult r;
    r.code_i = encode(image_i, false, 0);
    r.code_t = encode(image_t, false, 1);
    r.g_hat = decode(swap_latent(r.code_i, r.code_t), false);
    if (cfg_.pool_weight_channels > 0) {
      r.pooled_i = pool(r.code_i.light);
      r.pooled_t = pool(r.code_t.light);
    }
    if (has_head()) {
      r.pred_i = predict_raw(r.code_i.light, false, 0);
      r.pred_t = predict_raw(r.code_t.light, false, 1);
    }
    return r;
  }

  std::vector<nn::ParamRef> params() {
    std::vector<nn::ParamRef> out;
    for (int i = 0; i < static_cast<int>(enc_.size()); ++i) {
      enc_[i]->collect_params("enc" + std::to_string(i), out);
    }
    for (int i = 0; i < static_cast<int>(dec_.size()); ++i) {
      dec_[i]->collect_params("dec" + std::to_string(i), out);
    }
    out_conv_->collect_params("dec_out", out);
    if (head_) head_->collect_params("head", out);
    return out;
  }

  void init_params(Rng& rng) {
    for (auto& b : enc_) b->init_params(rng);
    for (auto& b : dec_) b->init_params(rng);
    out_conv_->init_params(rng);
    if (head_) head_->init_params(rng);
  }

  // Every layer kind in forward order (architecture introspection).
  std::vector<std::string> layer_kinds() const {
    std::vector<std::string> out;
    for (const auto& b : enc_) {
      for (const char* k : b->kinds()) out.push_back(k);
    }
    for (int i = 0; i < 2; ++i) {
      for (const char* k : dec_[i]->kinds()) out.push_back(k);
    }
    for (int stage = 0; stage < 4; ++stage) {
      out.push_back(up_[stage]->kind());
      for (const char* k : dec_[2 + 2 * stage]->kinds()) out.push_back(k);
      for (const char* k : dec_[3 + 2 * stage]->kinds()) out.push_back(k);
    }
    out.push_back(out_conv_->kind());
    out.push_back(out_act_->kind());
    return out;
  }

 private:
  void build() {
    const int L = cfg_.latent_channels;
    auto block = [&](int in, int out, int k, int s) {
      return std::make_unique<ConvBlock>(in, out, k, s, cfg_);
    };
    // encoder: 11 weight layers, skips after indices 2, 4, 6
    enc_.push_back(block(3, 64, 3, 1));
    enc_.push_back(block(64, 128, 3, 2));
    enc_.push_back(block(128, 128, 3, 1));
    enc_.push_back(block(128, 256, 3, 2));
    enc_.push_back(block(256, 256, 3, 1));
    enc_.push_back(block(256, 512, 3, 2));
    enc_.push_back(block(512, 512, 3, 1));
    enc_.push_back(block(512, 512, 3, 2));
    enc_.push_back(block(512, 512, 3, 1));
    enc_.push_back(block(512, L, 1, 1));
    enc_.push_back(block(L, L, 1, 1));
    // decoder: 10 blocks + the output conv = 11 weight layers
    dec_.push_back(block(L, 512, 1, 1));
    dec_.push_back(block(512, 512, 1, 1));
    dec_.push_back(block(512 + 512, 512, 3, 1));
    dec_.push_back(block(512, 512, 3, 1));
    dec_.push_back(block(512 + 256, 256, 3, 1));
    dec_.push_back(block(256, 256, 3, 1));
    dec_.push_back(block(256 + 128, 128, 3, 1));
    dec_.push_back(block(128, 128, 3, 1));
    dec_.push_back(block(128, 64, 3, 1));
    dec_.push_back(block(64, 64, 3, 1));
    const nn::UpsampleMode mode = cfg_.bilinear_upsample
                                      ? nn::UpsampleMode::bilinear
                                      : nn::UpsampleMode::nearest;
    for (int i = 0; i < 4; ++i) up_.push_back(std::make_unique<nn::UpsampleX2>(mode));
    out_conv_ = std::make_unique<nn::Conv2d>(64, 3, 3, 1, 1);
    out_act_ = std::make_unique<nn::Sigmoid>();
    if (cfg_.variant == Variant::illum_predicter) {
      head_ = std::make_unique<IlluminationHead>(cfg_.head_in_features());
    }
  }

  static int batch_of(const LatentCode& grad) {
    if (!grad.scene.v.empty()) return grad.scene.n;
    if (!grad.light.v.empty()) return grad.light.n;
    for (const auto& s : grad.skips) {
      if (!s.v.empty()) return s.n;
    }
    return 1;
  }

  VariantConfig cfg_;
  std::vector<std::unique_ptr<ConvBlock>> enc_, dec_;
  std::vector<std::unique_ptr<nn::UpsampleX2>> up_;
  std::unique_ptr<nn::Conv2d> out_conv_;
  std::unique_ptr<nn::Sigmoid> out_act_;
  std::unique_ptr<IlluminationHead> head_;
  static constexpr int skip_ch_[3] = {128, 256, 512};
};

}  // namespace relight
