#include <gtest/gtest.h>

#include <cmath>

#include "jcest/rng.hpp"

using namespace jcest;

TEST(Philox, KnownAnswer) {
  // Reference vector for Philox4x32-10 with zero counter and key.
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(CounterRng, StreamsAreReproducibleAndDistinct) {
  CounterRng a(123, 4), b(123, 4), c(123, 5);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(CounterRng, UniformMoments) {
  CounterRng r(1, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
  }
  EXPECT_NEAR(s / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(s2 / n - 0.25, 1.0 / 12, 1e-3);
}

TEST(NormalQuantile, InvertsCdf) {
  double worst = 0.0;
  for (double p : {1e-300, 1e-100, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.97575, 0.999, 1 - 1e-10}) {
    const double x = normal_quantile(p);
    // Bisection as the reference, on the smaller tail so 1 - p stays exact.
    double lo = -40, hi = 40;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const bool below = p <= 0.5 ? normal_cdf(mid) < p : 0.5 * std::erfc(mid / std::sqrt(2.0)) > 1.0 - p;
      (below ? lo : hi) = mid;
    }
    worst = std::max(worst, std::abs(x - 0.5 * (lo + hi)));
  }
  EXPECT_LT(worst, 1e-9);
  EXPECT_EQ(normal_quantile(0.5), 0.0);
}
