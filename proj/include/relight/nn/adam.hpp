#pragma once
// Adam with optional parameter groups (the illumination head trains with its
// own learning rate; everything else shares the base rate).

#include <cmath>
#include <vector>

#include "relight/common.hpp"
#include "relight/nn/layers.hpp"

namespace relight::nn {

struct ParamGroup {
  std::vector<ParamRef> params;  // trainable refs only
  double lr;
};

class Adam {
 public:
  explicit Adam(std::vector<ParamGroup> groups, double beta1 = 0.9,
                double beta2 = 0.999, double eps = 1e-8)
      : groups_(std::move(groups)), beta1_(beta1), beta2_(beta2), eps_(eps) {
    for (auto& g : groups_) {
      for (auto& p : g.params) {
        check_run(p.trainable && p.grad != nullptr,
                  "adam: non-trainable param " + p.name);
        state_.push_back({std::vector<float>(p.value->size(), 0.0f),
                          std::vector<float>(p.value->size(), 0.0f)});
      }
    }
  }

  void step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    std::size_t si = 0;
    for (auto& g : groups_) {
      for (auto& p : g.params) {
        auto& st = state_[si++];
        float* v = p.value->data();
        const float* grad = p.grad->data();
        for (std::size_t i = 0; i < p.value->size(); ++i) {
          st.m[i] = static_cast<float>(beta1_ * st.m[i] + (1 - beta1_) * grad[i]);
          st.v[i] = static_cast<float>(beta2_ * st.v[i] +
                                       (1 - beta2_) * grad[i] * grad[i]);
          const double mhat = st.m[i] / bc1;
          const double vhat = st.v[i] / bc2;
          v[i] -= static_cast<float>(g.lr * mhat / (std::sqrt(vhat) + eps_));
        }
      }
    }
  }

  void zero_grads() {
    for (auto& g : groups_) {
      for (auto& p : g.params) p.grad->zero();
    }
  }

  long steps_taken() const { return t_; }

 private:
  struct State {
    std::vector<float> m, v;
  };
  std::vector<ParamGroup> groups_;
  std::vector<State> state_;
  double beta1_, beta2_, eps_;
  long t_ = 0;
};

}  // namespace relight::nn
