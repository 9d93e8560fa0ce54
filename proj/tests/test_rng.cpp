#include "relight/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

using relight::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
  Rng c(42), d(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(c.uniform(), d.uniform());
    ASSERT_EQ(c.normal(), d.normal());
  }
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, IndexBoundsAndCoverage) {
  Rng r(3);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 100000; ++i) {
    const auto k = r.index(10);
    ASSERT_LT(k, 10u);
    ++hits[k];
  }
  for (int h : hits) {
    EXPECT_GT(h, 9000);
    EXPECT_LT(h, 11000);
  }
}

TEST(Rng, NormalMoments) {
  Rng r(11);
  const int n = 200000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Rng, ShuffleIsPermutation) {
  Rng r(5);
  std::vector<int> v(257);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  r.shuffle(w);
  EXPECT_NE(v, w);  // astronomically unlikely to be identical
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(Rng, ForkIndependentOfParentState) {
  Rng a(9);
  Rng f1 = a.fork(1);
  a.next_u64();
  a.next_u64();
  Rng f2 = a.fork(1);  // same tag after advancing the parent
  for (int i = 0; i < 100; ++i) {
    ASSERT_EQ(f1.next_u64(), f2.next_u64());
  }
  Rng g = a.fork(2);
  EXPECT_NE(g.next_u64(), a.fork(1).next_u64());
}
