#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jcest/error.hpp"
#include "jcest/priors.hpp"

using namespace jcest;

namespace {

double expect(const QuadratureRule& r, double (*f)(double, double), double g0) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * r.density[i] * f(r.nodes[i], g0);
  return s;
}

}  // namespace

TEST(Priors, QuadratureReproducesMoments) {
  for (const Prior& p : {Prior::gaussian(1.0, 1.0), Prior::gaussian(2.0, 0.3), Prior::uniform(1.0, 1.0),
                         Prior::uniform(0.7, 0.2)}) {
    const QuadratureRule r = quadrature(p);
    EXPECT_NEAR(expect(r, [](double, double) { return 1.0; }, p.g0), 1.0, 1e-12);
    EXPECT_NEAR(expect(r, [](double g, double) { return g; }, p.g0), p.g0, 1e-12);
    EXPECT_NEAR(expect(r, [](double g, double g0) { return (g - g0) * (g - g0); }, p.g0), p.sigma * p.sigma, 1e-10);
    EXPECT_EQ(moments(p).mean, p.g0);
    EXPECT_DOUBLE_EQ(moments(p).variance, p.sigma * p.sigma);
  }
}

TEST(Priors, OscillatoryIntegrandResolved) {
  // E[cos(2 g tau)] for the Gaussian prior is cos(2 g0 tau) exp(-2 sigma^2 tau^2).
  const Prior p = Prior::gaussian(1.0, 0.5);
  const double tau = 20.0;
  const QuadratureRule r = quadrature(p, 256, 2.0 * tau);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * r.density[i] * std::cos(2.0 * r.nodes[i] * tau);
  EXPECT_NEAR(s, std::cos(2.0 * tau) * std::exp(-2.0 * 0.25 * tau * tau), 1e-13);
}

TEST(Priors, UniformSupportAndDensity) {
  const Prior p = Prior::uniform(1.0, 0.5);
  const auto [lo, hi] = p.domain();
  EXPECT_NEAR(hi - lo, 2.0 * std::sqrt(3.0) * 0.5, 1e-15);
  EXPECT_NEAR(density(p, 1.0), 1.0 / (hi - lo), 1e-15);
  EXPECT_EQ(density(p, hi + 0.01), 0.0);
}

TEST(Priors, GaussianDensity) {
  const Prior p = Prior::gaussian(1.0, 2.0);
  EXPECT_NEAR(density(p, 1.0), 1.0 / (std::sqrt(2.0 * std::numbers::pi) * 2.0), 1e-16);
  EXPECT_NEAR(p.domain().second - p.domain().first, 32.0, 1e-14);
}

TEST(Priors, Validation) {
  EXPECT_THROW(Prior::gaussian(1.0, 0.0).validate(), Error);
  EXPECT_THROW(Prior::uniform(-1.0, 1.0).validate(), Error);
  EXPECT_THROW(quadrature(Prior::gaussian(1.0, 1.0), 10), Error);
}
