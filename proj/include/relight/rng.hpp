#pragma once
// Deterministic random streams. std::normal_distribution and friends are not
// bit-reproducible across standard libraries, so the draw algorithms live
// here: uniforms come straight off mt19937_64, normals via Box-Muller,
// shuffles via Fisher-Yates. Same seed => same stream everywhere.

#include <cstdint>
#include <cmath>
#include <random>
#include <vector>

#include "relight/common.hpp"

namespace relight {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform double in [0, 1), 53 bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n), rejection sampling so there is no modulo bias
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // standard normal via Box-Muller; second value of each pair is cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  // Independent stream derived from this stream's seed and a tag; does not
  // advance or depend on this stream's position.
  Rng fork(std::uint64_t tag) const {
    return Rng(mix64(seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1))));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace relight
