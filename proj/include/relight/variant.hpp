#pragma once
// The three model variants and their latent layouts. The split is by channel:
// [scene | light], and inside the light part [pool weights | pool values] for
// the envmap variants. illum_predicter instead feeds its light part to a tiny
// fully-connected head.

#include <string>

#include <nlohmann/json.hpp>

#include "relight/common.hpp"

namespace relight {

enum class Variant { illum_predicter, envmap_only, envmap_scene };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::illum_predicter: return "illum_predicter";
    case Variant::envmap_only: return "envmap_only";
    case Variant::envmap_scene: return "envmap_scene";
  }
  return "?";
}

inline Variant variant_from_name(const std::string& name) {
  for (Variant v : {Variant::illum_predicter, Variant::envmap_only,
                    Variant::envmap_scene}) {
    if (name == variant_name(v)) return v;
  }
  throw UsageError("unknown variant '" + name +
                   "' (expected illum_predicter, envmap_only or envmap_scene)");
}

struct VariantConfig {
  Variant variant = Variant::envmap_only;
  int image_size = 256;
  int latent_channels = 2028;
  int scene_channels = 0;
  int light_channels = 2028;
  int pool_weight_channels = 492;  // leading light channels; 0 = no pooling
  int pool_value_channels = 1536;  // trailing light channels
  bool bilinear_upsample = false;
  float bn_momentum = 0.1f;
  float bn_eps = 1e-5f;

  static VariantConfig make(Variant v, int image_size = 256) {
    VariantConfig c;
    c.variant = v;
    c.image_size = image_size;
    switch (v) {
      case Variant::illum_predicter:
        c.latent_channels = 520;
        c.scene_channels = 512;
        c.light_channels = 8;
        c.pool_weight_channels = 0;
        c.pool_value_channels = 0;
        break;
      case Variant::envmap_only:
        // 2028 total; 3x512 value channels stay fully live, so the weight
        // block is the 492 remaining channels, reused cyclically
        c.latent_channels = 2028;
        c.scene_channels = 0;
        c.light_channels = 2028;
        c.pool_weight_channels = 492;
        c.pool_value_channels = 3 * 512;
        break;
      case Variant::envmap_scene:
        c.latent_channels = 2052;
        c.scene_channels = 1024;
        c.light_channels = 1028;
        c.pool_weight_channels = 514;
        c.pool_value_channels = 514;  // hue, saturation, 512 brightness
        break;
    }
    c.validate();
    return c;
  }

  int latent_extent() const { return image_size / 16; }  // 4 halvings
  int head_in_features() const {
    return light_channels * latent_extent() * latent_extent();
  }

  void validate() const {
    check_usage(image_size >= 32 && image_size % 16 == 0,
                "image_size must be a multiple of 16, >= 32");
    check_usage(scene_channels >= 0 && light_channels >= 1 &&
                    scene_channels + light_channels == latent_channels,
                "latent split must satisfy scene + light = latent");
    if (variant == Variant::illum_predicter) {
      check_usage(pool_weight_channels == 0 && pool_value_channels == 0,
                  "illum_predicter has no pooling channels");
    } else {
      check_usage(pool_weight_channels >= 1 && pool_value_channels >= 1 &&
                      pool_weight_channels + pool_value_channels ==
                          light_channels,
                  "pooling split must satisfy weights + values = light");
      const int want =
          variant == Variant::envmap_only ? 3 * 512 : 2 + 512;
      check_usage(pool_value_channels == want,
                  "pooled output size does not match the variant's envmap");
    }
  }
};

inline void to_json(nlohmann::json& j, const VariantConfig& c) {
  j = nlohmann::json{{"variant", variant_name(c.variant)},
                     {"image_size", c.image_size},
                     {"latent_channels", c.latent_channels},
                     {"scene_channels", c.scene_channels},
                     {"light_channels", c.light_channels},
                     {"pool_weight_channels", c.pool_weight_channels},
                     {"pool_value_channels", c.pool_value_channels},
                     {"bilinear_upsample", c.bilinear_upsample},
                     {"bn_momentum", c.bn_momentum},
                     {"bn_eps", c.bn_eps}};
}

inline void from_json(const nlohmann::json& j, VariantConfig& c) {
  c.variant = variant_from_name(j.at("variant").get<std::string>());
  j.at("image_size").get_to(c.image_size);
  j.at("latent_channels").get_to(c.latent_channels);
  j.at("scene_channels").get_to(c.scene_channels);
  j.at("light_channels").get_to(c.light_channels);
  j.at("pool_weight_channels").get_to(c.pool_weight_channels);
  j.at("pool_value_channels").get_to(c.pool_value_channels);
  j.at("bilinear_upsample").get_to(c.bilinear_upsample);
  j.at("bn_momentum").get_to(c.bn_momentum);
  j.at("bn_eps").get_to(c.bn_eps);
  c.validate();
}

}  // namespace relight
