#include <gtest/gtest.h>

#include <cmath>

#include "jcest/quadrature.hpp"

using namespace jcest;

TEST(Quadrature, GaussLegendreExactForPolynomials) {
  for (int n : {2, 5, 16, 33}) {
    const Rule& r = gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Quadrature, CompositeOscillatory) {
  // integral_0^10 cos(50 x) dx = sin(500)/50
  const double v = integrate_composite([](double x) { return std::cos(50.0 * x); }, 0.0, 10.0, 100);
  EXPECT_NEAR(v, std::sin(500.0) / 50.0, 1e-14);
}

TEST(Quadrature, AdaptiveHandlesPeaksAndOscillation) {
  const AdaptiveResult peak = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
  EXPECT_NEAR(peak.value, 2.0 * std::atan(100.0) / 1e-2, 1e-9);
  const AdaptiveResult osc = integrate_adaptive([](double x) { return std::exp(-x * x) * std::cos(20 * x); }, -8, 8);
  EXPECT_NEAR(osc.value, std::sqrt(M_PI) * std::exp(-100.0), 1e-13);
  EXPECT_GT(osc.evaluations, 0);
}
