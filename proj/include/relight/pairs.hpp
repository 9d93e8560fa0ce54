#pragma once
// (input, target) pair machinery over a SceneIndex. The training restriction
// is: different scene AND different light direction. Counting is exact and
// O(N) via inclusion-exclusion over aggregate tables, so the huge unrestricted
// sets (~147M pairs) never get enumerated; small sets are materialized and
// sampled by partial Fisher-Yates, large ones by rejection sampling.

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "relight/common.hpp"
#include "relight/rng.hpp"
#include "relight/scene_index.hpp"

namespace relight {

struct PairKey {
  std::uint32_t input = 0;   // record index of I
  std::uint32_t target = 0;  // record index of T
  bool operator==(const PairKey& o) const {
    return input == o.input && target == o.target;
  }
};

struct PairConstraints {
  bool different_scene = false;
  bool different_direction = false;
  bool same_temperature = false;
  bool same_direction = false;

  bool admits(const SceneIndex& idx, int i, int j) const {
    const auto& a = idx.records()[i];
    const auto& b = idx.records()[j];
    if (different_scene && idx.scene_of(i) == idx.scene_of(j)) return false;
    if (different_direction && a.illum.direction_deg == b.illum.direction_deg)
      return false;
    if (same_temperature && a.illum.temperature_k != b.illum.temperature_k)
      return false;
    if (same_direction && a.illum.direction_deg != b.illum.direction_deg)
      return false;
    return true;
  }
};

class PairSet {
 public:
  // Sets at or below this size are materialized; larger ones stay lazy.
  static constexpr std::uint64_t kMaterializeLimit = 1ull << 24;

  PairSet(const SceneIndex* index, PairConstraints cons)
      : index_(index), cons_(cons) {
    count_ = exact_count();
    if (count_ > 0 && count_ <= kMaterializeLimit) {
      items_.emplace();
      items_->reserve(count_);
      const int n = index_->record_count();
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (cons_.admits(*index_, i, j)) {
            items_->push_back({static_cast<std::uint32_t>(i),
                               static_cast<std::uint32_t>(j)});
          }
        }
      }
      check_run(items_->size() == count_,
                "pair count formula disagrees with enumeration");
    }
  }

  std::uint64_t count() const { return count_; }
  const SceneIndex& index() const { return *index_; }
  const PairConstraints& constraints() const { return cons_; }
  bool materialized() const { return items_.has_value(); }
  const std::vector<PairKey>& items() const {
    check_run(materialized(), "pair set too large to enumerate");
    return *items_;
  }

 private:
  // Per input record i, count admissible targets via inclusion-exclusion:
  // start from the set matching the equality constraints, remove those
  // sharing the scene and/or direction when the difference constraints are
  // on, and add back the doubly-removed ones.
  std::uint64_t exact_count() const {
    const int n = index_->record_count();
    const int s = index_->scene_count();
    const int D = kNumDirections, T = kNumTemperatures;
    std::vector<std::uint64_t> by_scene(s, 0), by_dir(D, 0), by_temp(T, 0);
    std::vector<std::uint64_t> by_scene_dir(s * D, 0), by_scene_temp(s * T, 0),
        by_dir_temp(D * T, 0), by_all(s * D * T, 0);
    for (int i = 0; i < n; ++i) {
      const int sc = index_->scene_of(i);
      const int d = index_->records()[i].illum.dir_index();
      const int t = index_->records()[i].illum.temp_index();
      ++by_scene[sc];
      ++by_dir[d];
      ++by_temp[t];
      ++by_scene_dir[sc * D + d];
      ++by_scene_temp[sc * T + t];
      ++by_dir_temp[d * T + t];
      ++by_all[(sc * D + d) * T + t];
    }
    std::uint64_t total = 0;
    for (int i = 0; i < n; ++i) {
      const int sc = index_->scene_of(i);
      const int d = index_->records()[i].illum.dir_index();
      const int t = index_->records()[i].illum.temp_index();
      const bool st = cons_.same_temperature, sd = cons_.same_direction;
      std::uint64_t base = st && sd ? by_dir_temp[d * T + t]
                           : st     ? by_temp[t]
                           : sd     ? by_dir[d]
                                    : static_cast<std::uint64_t>(n);
      std::uint64_t sub_scene = st && sd ? by_all[(sc * D + d) * T + t]
                                : st     ? by_scene_temp[sc * T + t]
                                : sd     ? by_scene_dir[sc * D + d]
                                         : by_scene[sc];
      std::uint64_t sub_dir = st ? by_dir_temp[d * T + t] : by_dir[d];
      std::uint64_t both = st ? by_all[(sc * D + d) * T + t]
                              : by_scene_dir[sc * D + d];
      if (sd) {
        // the whole base shares this direction already
        sub_dir = base;
        both = sub_scene;
      }
      std::uint64_t c = base;
      if (cons_.different_scene) c -= sub_scene;
      if (cons_.different_direction) c -= sub_dir;
      if (cons_.different_scene && cons_.different_direction) c += both;
      total += c;
    }
    return total;
  }

  const SceneIndex* index_;
  PairConstraints cons_;
  std::uint64_t count_ = 0;
  std::optional<std::vector<PairKey>> items_;
};

// All pairs; restricted = different scene AND different direction. With one
// scene the restricted set is empty (callers get a warning-worthy empty set,
// not an error).
inline PairSet enumerate_pairs(const SceneIndex& index, bool restricted) {
  check_data(index.record_count() > 0, "enumerate_pairs: empty index");
  PairConstraints cons;
  cons.different_scene = restricted;
  cons.different_direction = restricted;
  return PairSet(&index, cons);
}

enum class SubsetPredicate { same_temperature, same_direction };

inline PairSet filter_subset(const PairSet& pairs, SubsetPredicate pred) {
  PairConstraints cons = pairs.constraints();
  if (pred == SubsetPredicate::same_temperature) cons.same_temperature = true;
  if (pred == SubsetPredicate::same_direction) cons.same_direction = true;
  return PairSet(&pairs.index(), cons);
}

// n distinct pairs, deterministic in seed. Materialized sets use a partial
// Fisher-Yates over the enumeration; lazy (huge) sets use rejection sampling,
// which is only economical when n << count, exactly the subsample regime
// those sets exist for.
inline std::vector<PairKey> sample_pairs(const PairSet& pairs, std::uint64_t n,
                                         std::uint64_t seed) {
  check_usage(n <= pairs.count(),
              "sample_pairs: requested " + std::to_string(n) + " of " +
                  std::to_string(pairs.count()) + " pairs");
  Rng rng(seed);
  std::vector<PairKey> out;
  out.reserve(n);
  if (pairs.materialized()) {
    std::vector<PairKey> pool = pairs.items();
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint64_t j = i + rng.index(pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }
  const std::uint64_t N = pairs.index().record_count();
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(n * 2);
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = 1000 * n + 1000000;
  while (out.size() < n) {
    check_run(++attempts <= max_attempts,
              "sample_pairs: rejection sampling stalled (budget too close to "
              "population?)");
    const auto i = static_cast<std::uint32_t>(rng.index(N));
    const auto j = static_cast<std::uint32_t>(rng.index(N));
    if (!pairs.constraints().admits(pairs.index(), i, j)) continue;
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
    if (!seen.insert(key).second) continue;
    out.push_back({i, j});
  }
  return out;
}

}  // namespace relight
