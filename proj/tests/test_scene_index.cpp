#include "relight/scene_index.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "relight/image.hpp"
#include "relight/tensor.hpp"

using namespace relight;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("scene_index_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_dummy_image(const fs::path& dir) {
  Tensor img(1, 3, 4, 4);
  img.fill(0.5f);
  save_png(dir / "dummy.png", img);
}

// manifest with n_scenes complete scenes, all rows pointing at dummy.png
fs::path write_manifest(const fs::path& dir, int n_scenes,
                        int rows_for_last_scene = kIlluminationsPerScene) {
  write_dummy_image(dir);
  const fs::path p = dir / "manifest.csv";
  std::ofstream out(p);
  out << "scene_id,direction,temperature,relpath\n";
  for (int s = 0; s < n_scenes; ++s) {
    int written = 0;
    for (int d : kDirectionsDeg) {
      for (int t : kTemperaturesK) {
        if (s == n_scenes - 1 && written >= rows_for_last_scene) break;
        out << "scene_" << s << "," << direction_name(d) << "," << t
            << ",dummy.png\n";
        ++written;
      }
    }
  }
  return p;
}

}  // namespace

TEST(ParseManifest, MinimalCompleteScene) {
  const auto dir = fresh_dir("minimal");
  const SceneIndex idx = parse_manifest(write_manifest(dir, 1));
  EXPECT_EQ(idx.record_count(), 40);
  EXPECT_EQ(idx.scene_count(), 1);
  EXPECT_EQ(idx.scene_ids()[0], "scene_0");
  // every (scene, illumination) combination resolves
  for (int f = 0; f < kIlluminationsPerScene; ++f) {
    EXPECT_GE(idx.record_at(0, f), 0);
  }
}

TEST(ParseManifest, RejectsIncompleteScene) {
  const auto dir = fresh_dir("incomplete");
  const auto p = write_manifest(dir, 2, 39);
  try {
    parse_manifest(p);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("incomplete scene"), std::string::npos);
  }
}

TEST(ParseManifest, RejectsUnknownTemperature) {
  const auto dir = fresh_dir("badtemp");
  write_dummy_image(dir);
  const fs::path p = dir / "manifest.csv";
  std::ofstream(p) << "scene_id,direction,temperature,relpath\n"
                   << "scene_0,N,3000,dummy.png\n";
  EXPECT_THROW(parse_manifest(p), DataError);
}

TEST(ParseManifest, RejectsUnknownDirection) {
  const auto dir = fresh_dir("baddir");
  write_dummy_image(dir);
  const fs::path p = dir / "manifest.csv";
  std::ofstream(p) << "scene_id,direction,temperature,relpath\n"
                   << "scene_0,NNE,2500,dummy.png\n";
  EXPECT_THROW(parse_manifest(p), DataError);
}

TEST(ParseManifest, RejectsDuplicateKey) {
  const auto dir = fresh_dir("dup");
  write_dummy_image(dir);
  const fs::path p = dir / "manifest.csv";
  std::ofstream(p) << "scene_id,direction,temperature,relpath\n"
                   << "scene_0,N,2500,dummy.png\n"
                   << "scene_0,N,2500,dummy.png\n";
  try {
    parse_manifest(p);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(ParseManifest, RejectsMissingFileNamingThePath) {
  const auto dir = fresh_dir("missing");
  const fs::path p = dir / "manifest.csv";
  std::ofstream(p) << "scene_id,direction,temperature,relpath\n"
                   << "scene_0,N,2500,nothere.png\n";
  try {
    parse_manifest(p);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("nothere.png"), std::string::npos);
  }
}

TEST(ParseManifest, RejectsWrongHeader) {
  const auto dir = fresh_dir("header");
  const fs::path p = dir / "manifest.csv";
  std::ofstream(p) << "scene,dir,temp,path\n";
  EXPECT_THROW(parse_manifest(p), DataError);
}

TEST(CompassMapping, CanonicalDegrees) {
  EXPECT_EQ(direction_from_name("N"), 0);
  EXPECT_EQ(direction_from_name("NE"), 45);
  EXPECT_EQ(direction_from_name("E"), 90);
  EXPECT_EQ(direction_from_name("SE"), 135);
  EXPECT_EQ(direction_from_name("S"), 180);
  EXPECT_EQ(direction_from_name("SW"), 225);
  EXPECT_EQ(direction_from_name("W"), 270);
  EXPECT_EQ(direction_from_name("NW"), 315);
  EXPECT_EQ(direction_from_name("X"), -1);
}

TEST(IlluminationGrid, FlatIndexRoundTrip) {
  for (int f = 0; f < kIlluminationsPerScene; ++f) {
    const Illumination il = illumination_from_flat(f);
    EXPECT_TRUE(il.valid());
    EXPECT_EQ(il.flat_index(), f);
  }
}
