#pragma once
// (I, T, G) triple loading. G is the dataset image with I's scene and T's
// illumination; it always exists because every scene is complete.

#include <filesystem>

#include "relight/common.hpp"
#include "relight/image.hpp"
#include "relight/pairs.hpp"
#include "relight/scene_index.hpp"

namespace relight {

struct RelightingTriple {
  Tensor I, T, G;  // (1, 3, S, S) each, values in [0,1]
  Illumination illum_I, illum_T;
  std::string scene_I, scene_T;
};

inline Tensor load_record_image(const SceneIndex& index, int record,
                                int target_size) {
  const auto& rec = index.records()[record];
  Tensor img = load_png(index.root() / rec.relpath);
  return resize_bilinear(img, target_size, target_size);
}

inline RelightingTriple load_triple(const SceneIndex& index, const PairKey& key,
                                    int target_size = 256) {
  const int n = index.record_count();
  check_data(key.input < static_cast<std::uint32_t>(n) &&
                 key.target < static_cast<std::uint32_t>(n),
             "load_triple: pair key out of range");
  const auto& rec_i = index.records()[key.input];
  const auto& rec_t = index.records()[key.target];
  const int g_record = index.record_at(index.scene_of(key.input),
                                       rec_t.illum.flat_index());
  check_data(g_record >= 0, "load_triple: ground-truth image missing for " +
                                rec_i.scene_id);
  RelightingTriple out;
  out.I = load_record_image(index, key.input, target_size);
  out.T = load_record_image(index, key.target, target_size);
  out.G = load_record_image(index, g_record, target_size);
  out.illum_I = rec_i.illum;
  out.illum_T = rec_t.illum;
  out.scene_I = rec_i.scene_id;
  out.scene_T = rec_t.scene_id;
  return out;
}

}  // namespace relight
