#include "relight/envmap.hpp"

#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "relight/color.hpp"
#include "relight/illumination.hpp"

using relight::direction_profile;
using relight::EnvmapCompact;
using relight::generate_envmap_hsl;
using relight::generate_envmap_rgb;
using relight::Illumination;
using relight::kEnvmapH;
using relight::kEnvmapPixels;
using relight::kEnvmapW;
using relight::Tensor;

TEST(DirectionProfile, NorthPeaksAtColumnZero) {
  const auto p = direction_profile(0.0);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  for (int x = 1; x < kEnvmapW; ++x) EXPECT_LT(p[x], 1.0);
}

TEST(DirectionProfile, SouthPeakAndSymmetry) {
  const auto p = direction_profile(180.0);
  EXPECT_DOUBLE_EQ(p[16], 1.0);
  for (int d = 1; d < 16; ++d) {
    EXPECT_DOUBLE_EQ(p[16 - d], p[16 + d]);
  }
}

TEST(DirectionProfile, CompassPeaksAreExactlyOne) {
  for (int deg : relight::kDirectionsDeg) {
    const auto p = direction_profile(deg);
    EXPECT_DOUBLE_EQ(p[relight::peak_column(deg)], 1.0) << deg;
  }
}

TEST(DirectionProfile, WrapAround354) {
  const auto p = direction_profile(354.0);
  // Frozen values for mu = 31.4666...
  EXPECT_NEAR(p[31], 0.9583571886519545, 1e-15);
  EXPECT_NEAR(p[0], 0.9459594689067652, 1e-15);
  EXPECT_GT(p[31], 0.5);
  EXPECT_GT(p[0], 0.5);
}

TEST(DirectionProfile, FortyFiveDegreesIsFourColumnShift) {
  for (int base : relight::kDirectionsDeg) {
    const auto p0 = direction_profile(base);
    const auto p1 = direction_profile((base + 45) % 360);
    for (int x = 0; x < kEnvmapW; ++x) {
      EXPECT_NEAR(p1[(x + 4) % kEnvmapW], p0[x], 1e-9);
    }
  }
}

TEST(DirectionProfile, RejectsOutOfRangeDegrees) {
  EXPECT_THROW(direction_profile(-1.0), relight::UsageError);
  EXPECT_THROW(direction_profile(360.0), relight::UsageError);
}

TEST(EnvmapRgb, RowsBitwiseIdentical) {
  for (int deg : {0, 135, 315}) {
    const Tensor map = generate_envmap_rgb({deg, 3500});
    for (int c = 0; c < 3; ++c) {
      const float* row0 = map.chan(0, c);
      for (int r = 1; r < kEnvmapH; ++r) {
        ASSERT_EQ(std::memcmp(row0, map.chan(0, c) + r * kEnvmapW,
                              kEnvmapW * sizeof(float)),
                  0);
      }
    }
  }
}

TEST(EnvmapRgb, Deterministic) {
  const Tensor a = generate_envmap_rgb({45, 2500});
  const Tensor b = generate_envmap_rgb({45, 2500});
  ASSERT_EQ(a.v, b.v);
}

TEST(EnvmapRgb, PeakLuminanceAtMuColumn) {
  for (int deg : relight::kDirectionsDeg) {
    const Tensor map = generate_envmap_rgb({deg, 4500});
    int best = -1;
    double best_lum = -1.0;
    for (int x = 0; x < kEnvmapW; ++x) {
      const double lum =
          map.chan(0, 0)[x] + map.chan(0, 1)[x] + map.chan(0, 2)[x];
      if (lum > best_lum) {
        best_lum = lum;
        best = x;
      }
    }
    EXPECT_EQ(best, relight::peak_column(deg)) << deg;
  }
}

TEST(EnvmapRgb, EastWestMirror) {
  const Tensor east = generate_envmap_rgb({90, 2500});
  const Tensor west = generate_envmap_rgb({270, 2500});
  for (int c = 0; c < 3; ++c) {
    for (int x = 0; x < kEnvmapW; ++x) {
      const int mx = (kEnvmapW - x) % kEnvmapW;  // mirror about columns 0/16
      EXPECT_NEAR(east.chan(0, c)[x], west.chan(0, c)[mx], 1e-6);
    }
  }
}

TEST(EnvmapRgb, ValuesInUnitInterval) {
  const Tensor map = generate_envmap_rgb({225, 2500});
  for (float v : map.v) {
    ASSERT_GE(v, 0.0f);
    ASSERT_LE(v, 1.0f);
  }
}

TEST(EnvmapCompactForm, HueSatMatchLightColor) {
  const EnvmapCompact warm = generate_envmap_hsl({0, 2500});
  EXPECT_GE(warm.hue, 0.0);
  EXPECT_LT(warm.hue, 0.17);
  const EnvmapCompact neutral = generate_envmap_hsl({0, 6500});
  EXPECT_LT(neutral.saturation, 0.05);
}

TEST(EnvmapCompactForm, BrightnessIsReplicatedProfile) {
  const EnvmapCompact m = generate_envmap_hsl({90, 5500});
  ASSERT_EQ(static_cast<int>(m.brightness.size()), kEnvmapPixels);
  // peak 1, and exactly 16 entries (one per row) attain the maximum
  float mx = 0;
  for (float b : m.brightness) mx = std::max(mx, b);
  EXPECT_FLOAT_EQ(mx, 1.0f);
  int count = 0;
  for (float b : m.brightness) count += (b == mx);
  EXPECT_EQ(count, kEnvmapH);
  // rows identical
  for (int r = 1; r < kEnvmapH; ++r) {
    for (int x = 0; x < kEnvmapW; ++x) {
      ASSERT_EQ(m.brightness[r * kEnvmapW + x], m.brightness[x]);
    }
  }
}

TEST(EnvmapCompactForm, FlatVectorIs514Wide) {
  const EnvmapCompact m = generate_envmap_hsl({315, 3500});
  const auto flat = m.flat();
  ASSERT_EQ(flat.size(), 514u);
  EXPECT_FLOAT_EQ(flat[0], static_cast<float>(m.hue));
  EXPECT_FLOAT_EQ(flat[1], static_cast<float>(m.saturation));
  EXPECT_FLOAT_EQ(flat[2], m.brightness[0]);
}

TEST(EnvmapConsistency, CompactExpandsToRgbMap) {
  for (int deg : relight::kDirectionsDeg) {
    for (int kelvin : relight::kTemperaturesK) {
      const Tensor direct = generate_envmap_rgb({deg, kelvin});
      const Tensor via_compact =
          relight::compact_to_rgb(generate_envmap_hsl({deg, kelvin}));
      ASSERT_TRUE(direct.same_shape(via_compact));
      for (std::size_t i = 0; i < direct.size(); ++i) {
        ASSERT_NEAR(direct.v[i], via_compact.v[i], 1e-6);
      }
    }
  }
}
