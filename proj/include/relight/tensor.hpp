#pragma once
// Minimal dense float32 tensor, NCHW, contiguous row-major. This is the only
// storage type the net uses; there are no views and no broadcasting. Vectors
// ride along as (n, len, 1, 1).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "relight/common.hpp"

namespace relight {

struct Tensor {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<float> v;

  Tensor() = default;
  Tensor(int n_, int c_, int h_, int w_)
      : n(n_), c(c_), h(h_), w(w_),
        v(static_cast<std::size_t>(n_) * c_ * h_ * w_, 0.0f) {}

  static Tensor vec(int n_, int len) { return Tensor(n_, len, 1, 1); }

  std::size_t size() const { return v.size(); }
  std::size_t plane() const { return static_cast<std::size_t>(h) * w; }
  std::size_t sample_size() const { return static_cast<std::size_t>(c) * h * w; }

  float* data() { return v.data(); }
  const float* data() const { return v.data(); }

  float* sample(int in) { return data() + in * sample_size(); }
  const float* sample(int in) const { return data() + in * sample_size(); }

  float* chan(int in, int ic) {
    return data() + (static_cast<std::size_t>(in) * c + ic) * plane();
  }
  const float* chan(int in, int ic) const {
    return data() + (static_cast<std::size_t>(in) * c + ic) * plane();
  }

  float& at(int in, int ic, int iy, int ix) {
    return v[((static_cast<std::size_t>(in) * c + ic) * h + iy) * w + ix];
  }
  float at(int in, int ic, int iy, int ix) const {
    return v[((static_cast<std::size_t>(in) * c + ic) * h + iy) * w + ix];
  }

  bool same_shape(const Tensor& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }

  std::string shape_str() const {
    return "(" + std::to_string(n) + "," + std::to_string(c) + "," +
           std::to_string(h) + "," + std::to_string(w) + ")";
  }

  void zero() { std::fill(v.begin(), v.end(), 0.0f); }
  void fill(float x) { std::fill(v.begin(), v.end(), x); }

  void add(const Tensor& o) {
    check_run(same_shape(o), "tensor add: shape mismatch " + shape_str() +
                                 " vs " + o.shape_str());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  }

  void scale(float a) {
    for (float& x : v) x *= a;
  }

  bool all_finite() const {
    for (float x : v) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }
};

}  // namespace relight
