#pragma once
// Dataset ingestion. The on-disk layout is manifest-driven: a CSV listing
// every image with its scene id and illumination. Each scene must be
// complete (all 40 direction x temperature combinations, no duplicates).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "relight/common.hpp"
#include "relight/illumination.hpp"

namespace relight {

struct SceneRecord {
  std::string scene_id;
  Illumination illum;
  std::string relpath;  // relative to the manifest's directory
};

class SceneIndex {
 public:
  const std::vector<SceneRecord>& records() const { return records_; }
  int record_count() const { return static_cast<int>(records_.size()); }
  int scene_count() const { return static_cast<int>(scene_ids_.size()); }
  const std::vector<std::string>& scene_ids() const { return scene_ids_; }
  const std::filesystem::path& root() const { return root_; }

  // scene ordinal (order of first appearance in the manifest) per record
  int scene_of(int record) const { return scene_ord_[record]; }

  // record index for (scene ordinal, illumination flat index); the index is
  // complete by construction so this always resolves
  int record_at(int scene_ord, int illum_flat) const {
    return lookup_[scene_ord * kIlluminationsPerScene + illum_flat];
  }

  friend SceneIndex parse_manifest(const std::filesystem::path& path);

 private:
  std::vector<SceneRecord> records_;
  std::vector<int> scene_ord_;       // per record
  std::vector<std::string> scene_ids_;
  std::vector<int> lookup_;          // scene_ord * 40 + illum_flat -> record
  std::filesystem::path root_;
};

inline SceneIndex parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  check_data(in.good(), "cannot open manifest: " + path.string());
  std::string line;
  check_data(static_cast<bool>(std::getline(in, line)), "empty manifest");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  check_data(line == "scene_id,direction,temperature,relpath",
             "manifest header must be 'scene_id,direction,temperature,relpath'");

  SceneIndex idx;
  idx.root_ = path.has_parent_path() ? path.parent_path()
                                     : std::filesystem::path(".");
  std::unordered_map<std::string, int> scene_ord_by_id;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string scene_id, dir_s, temp_s, relpath;
    const bool ok = static_cast<bool>(std::getline(ss, scene_id, ',')) &&
                    static_cast<bool>(std::getline(ss, dir_s, ',')) &&
                    static_cast<bool>(std::getline(ss, temp_s, ',')) &&
                    static_cast<bool>(std::getline(ss, relpath));
    check_data(ok && !scene_id.empty() && !relpath.empty(),
               "malformed manifest row at line " + std::to_string(line_no));
    const int dir = direction_from_name(dir_s);
    check_data(dir >= 0, "direction '" + dir_s +
                             "' not in the compass set (line " +
                             std::to_string(line_no) + ")");
    int temp = 0;
    try {
      temp = std::stoi(temp_s);
    } catch (const std::exception&) {
      throw DataError("non-numeric temperature at line " +
                      std::to_string(line_no));
    }
    check_data(temperature_index(temp) >= 0,
               "temperature " + temp_s + " not in the dataset set (line " +
                   std::to_string(line_no) + ")");
    check_data(std::filesystem::exists(idx.root_ / relpath),
               "manifest references missing file: " +
                   (idx.root_ / relpath).string());

    auto [it, inserted] =
        scene_ord_by_id.try_emplace(scene_id, static_cast<int>(idx.scene_ids_.size()));
    if (inserted) {
      idx.scene_ids_.push_back(scene_id);
      idx.lookup_.resize(idx.scene_ids_.size() * kIlluminationsPerScene, -1);
    }
    const int ord = it->second;
    const Illumination illum{dir, temp};
    const int slot = ord * kIlluminationsPerScene + illum.flat_index();
    check_data(idx.lookup_[slot] < 0,
               "duplicate (scene, illumination) key: " + scene_id + " " +
                   dir_s + " " + temp_s);
    idx.lookup_[slot] = static_cast<int>(idx.records_.size());
    idx.records_.push_back({scene_id, illum, relpath});
    idx.scene_ord_.push_back(ord);
  }

  check_data(!idx.records_.empty(), "manifest has no data rows");
  for (int s = 0; s < idx.scene_count(); ++s) {
    int have = 0;
    for (int f = 0; f < kIlluminationsPerScene; ++f) {
      have += idx.lookup_[s * kIlluminationsPerScene + f] >= 0;
    }
    check_data(have == kIlluminationsPerScene,
               "incomplete scene '" + idx.scene_ids_[s] + "': has " +
                   std::to_string(have) + " of " +
                   std::to_string(kIlluminationsPerScene) + " illuminations");
  }
  return idx;
}

}  // namespace relight
