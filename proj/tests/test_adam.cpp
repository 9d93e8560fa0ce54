#include "relight/nn/adam.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "relight/tensor.hpp"

using namespace relight;
using namespace relight::nn;

TEST(Adam, FirstStepMovesByLearningRateSign) {
  Tensor p(1, 4, 1, 1), g(1, 4, 1, 1);
  p.fill(1.0f);
  g.v = {0.5f, -2.0f, 1e-3f, 0.0f};
  Adam opt({{{{"p", &p, &g, true}}, 0.01}});
  opt.step();
  // bias correction makes the first update lr * g/|g| wherever g != 0
  EXPECT_NEAR(p.v[0], 1.0 - 0.01, 1e-6);
  EXPECT_NEAR(p.v[1], 1.0 + 0.01, 1e-6);
  EXPECT_NEAR(p.v[2], 1.0 - 0.01, 1e-5);
  EXPECT_FLOAT_EQ(p.v[3], 1.0f);
}

TEST(Adam, MinimizesQuadratic) {
  Tensor p(1, 3, 1, 1), g(1, 3, 1, 1);
  p.v = {5.0f, -4.0f, 0.5f};
  const float target[3] = {1.0f, 2.0f, -3.0f};
  Adam opt({{{{"p", &p, &g, true}}, 0.05}});
  for (int i = 0; i < 2000; ++i) {
    for (int j = 0; j < 3; ++j) g.v[j] = 2 * (p.v[j] - target[j]);
    opt.step();
  }
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(p.v[j], target[j], 1e-2);
  }
}

TEST(Adam, ParameterGroupsUseOwnRates) {
  Tensor a(1, 1, 1, 1), ga(1, 1, 1, 1);
  Tensor b(1, 1, 1, 1), gb(1, 1, 1, 1);
  ga.v[0] = 1.0f;
  gb.v[0] = 1.0f;
  Adam opt({{{{"a", &a, &ga, true}}, 0.001}, {{{"b", &b, &gb, true}}, 0.1}});
  opt.step();
  EXPECT_NEAR(a.v[0], -0.001, 1e-7);
  EXPECT_NEAR(b.v[0], -0.1, 1e-5);
}

TEST(Adam, ZeroGradsClearsAllGroups) {
  Tensor a(1, 2, 1, 1), ga(1, 2, 1, 1);
  ga.fill(3.0f);
  Adam opt({{{{"a", &a, &ga, true}}, 0.01}});
  opt.zero_grads();
  EXPECT_FLOAT_EQ(ga.v[0], 0.0f);
  EXPECT_FLOAT_EQ(ga.v[1], 0.0f);
}

TEST(Adam, RejectsNonTrainableParams) {
  Tensor a(1, 1, 1, 1);
  EXPECT_THROW(Adam({{{{"a", &a, nullptr, false}}, 0.01}}), RunError);
}
