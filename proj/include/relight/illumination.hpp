#pragma once
// The discrete illumination grid: 8 compass light directions (N = 0 deg,
// clockwise) x 5 color temperatures in Kelvin. Every dataset image carries
// exactly one (direction, temperature) combination.

#include <array>
#include <string>

#include "relight/common.hpp"

namespace relight {

inline constexpr std::array<int, 8> kDirectionsDeg = {0,   45,  90,  135,
                                                      180, 225, 270, 315};
inline constexpr std::array<const char*, 8> kDirectionNames = {
    "N", "NE", "E", "SE", "S", "SW", "W", "NW"};
inline constexpr std::array<int, 5> kTemperaturesK = {2500, 3500, 4500, 5500,
                                                     6500};
inline constexpr int kNumDirections = 8;
inline constexpr int kNumTemperatures = 5;
inline constexpr int kIlluminationsPerScene = kNumDirections * kNumTemperatures;

inline int direction_index(int degrees) {
  for (int i = 0; i < kNumDirections; ++i) {
    if (kDirectionsDeg[i] == degrees) return i;
  }
  return -1;
}

inline int temperature_index(int kelvin) {
  for (int i = 0; i < kNumTemperatures; ++i) {
    if (kTemperaturesK[i] == kelvin) return i;
  }
  return -1;
}

// Compass name ("N".."NW") to degrees, -1 if unknown.
inline int direction_from_name(const std::string& name) {
  for (int i = 0; i < kNumDirections; ++i) {
    if (name == kDirectionNames[i]) return kDirectionsDeg[i];
  }
  return -1;
}

// Degrees to compass name; degrees must be one of kDirectionsDeg.
inline std::string direction_name(int degrees) {
  const int i = direction_index(degrees);
  check_run(i >= 0, "direction_name: not a compass direction");
  return kDirectionNames[i];
}

struct Illumination {
  int direction_deg = 0;   // element of kDirectionsDeg
  int temperature_k = 6500;  // element of kTemperaturesK

  bool valid() const {
    return direction_index(direction_deg) >= 0 &&
           temperature_index(temperature_k) >= 0;
  }
  int dir_index() const { return direction_index(direction_deg); }
  int temp_index() const { return temperature_index(temperature_k); }
  // dense index in [0, 40)
  int flat_index() const { return dir_index() * kNumTemperatures + temp_index(); }

  bool operator==(const Illumination& o) const {
    return direction_deg == o.direction_deg && temperature_k == o.temperature_k;
  }
};

inline Illumination illumination_from_flat(int flat) {
  check_run(flat >= 0 && flat < kIlluminationsPerScene,
            "illumination_from_flat: index out of range");
  return {kDirectionsDeg[flat / kNumTemperatures],
          kTemperaturesK[flat % kNumTemperatures]};
}

}  // namespace relight
