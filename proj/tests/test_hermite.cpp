#include <gtest/gtest.h>

#include <cmath>

#include "jcest/hermite.hpp"
#include "jcest/quadrature.hpp"

using namespace jcest;

TEST(Hermite, Orthonormal) {
  const int nmax = 12;
  for (int m = 0; m <= nmax; ++m) {
    for (int n = m; n <= nmax; ++n) {
      const double v = integrate_composite(
          [&](double x) {
            const auto psi = hermite_functions(nmax, x);
            return psi[m] * psi[n];
          },
          -12.0, 12.0, 48);
      EXPECT_NEAR(v, m == n ? 1.0 : 0.0, 1e-13) << m << "," << n;
    }
  }
}

TEST(Hermite, LowOrderClosedForms) {
  const double x = 0.7;
  const double base = std::exp(-0.5 * x * x) / std::pow(M_PI, 0.25);
  EXPECT_NEAR(hermite_function(0, x), base, 1e-15);
  EXPECT_NEAR(hermite_function(2, x), base * (4 * x * x - 2) / std::sqrt(8.0), 1e-15);
  EXPECT_NEAR(hermite_function(3, x), base * (8 * x * x * x - 12 * x) / std::sqrt(48.0), 1e-15);
}

TEST(Hermite, CosineExpansionConverges) {
  const double sigma = 1.0, g0 = 1.0, tau = M_PI / 4;
  const HermiteExpansion e = cosine_expansion(sigma, g0, tau, 40);
  EXPECT_TRUE(e.tail_converged());
  for (double x : {-3.0, -1.0, 0.0, 0.4, 2.5}) {
    const double target = std::cos(2 * sigma * tau * x + 2 * g0 * tau) * std::exp(-0.5 * x * x);
    EXPECT_NEAR(e.value(x), target, 1e-12);
    EXPECT_NEAR(e.odd_part(x), -std::sin(2 * g0 * tau) * std::sin(2 * sigma * tau * x) * std::exp(-0.5 * x * x),
                1e-12);
  }
}

TEST(Hermite, CoefficientsAreProjections) {
  const double sigma = 0.8, g0 = 1.2, tau = 0.9;
  const HermiteExpansion e = cosine_expansion(sigma, g0, tau, 10);
  for (int n = 0; n <= 10; ++n) {
    const double proj = integrate_composite(
        [&](double x) {
          return hermite_function(n, x) * std::cos(2 * sigma * tau * x + 2 * g0 * tau) * std::exp(-0.5 * x * x);
        },
        -12.0, 12.0, 48);
    EXPECT_NEAR(e.coefficients[n], proj, 1e-13) << n;
  }
}
