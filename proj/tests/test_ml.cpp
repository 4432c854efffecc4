#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "jcest/error.hpp"
#include "jcest/ml.hpp"

using namespace jcest;

namespace {

constexpr double kPi = std::numbers::pi;

// erf(z) from its Maclaurin series in long double; fine for |z| < 3.
std::complex<long double> erf_series(std::complex<long double> z) {
  std::complex<long double> term = z, sum = z;
  const std::complex<long double> z2 = z * z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<long double>(n);
    sum += term / static_cast<long double>(2 * n + 1);
  }
  return sum * 2.0L / std::sqrt(std::numbers::pi_v<long double>);
}

// c1, c2 from the half-period inequalities written through the complex error function:
// integral_0^L e^{-x^2/2} sin(kx) dx = e^{-k^2/2} sqrt(pi/2) Im[erf((L - ik)/sqrt2) + erf(ik/sqrt2)].
std::pair<double, double> c12_complex_erf(double g0, double sigma, double tau) {
  using C = std::complex<long double>;
  const long double k = 2.0L * sigma * tau;
  const long double a = std::numbers::pi_v<long double> / (2.0L * std::numbers::sqrt2_v<long double> * sigma * tau);
  const long double b = k / std::numbers::sqrt2_v<long double>;
  const long double i1 = std::exp(-k * k / 2) * std::sqrt(std::numbers::pi_v<long double> / 2) *
                         (erf_series(C(a, -b)) + erf_series(C(0, b))).imag();
  const long double i0 = 0.5L * std::erf(a);  // (1/sqrt(2 pi)) integral_0^L e^{-x^2/2}
  const long double y = sigma * std::abs(std::sin(2.0 * g0 * tau));
  return {static_cast<double>(i0 / (y * i1)), static_cast<double>((1 - i0) / (y * i1))};
}

}  // namespace

TEST(MlGaussian, HalfPeriodBoundsMatchComplexErf) {
  for (auto [g0, sigma, tau] : {std::tuple{1.0, 1.0, kPi / 4}, std::tuple{1.0, 0.6, 0.9}, std::tuple{2.0, 1.3, 0.4}}) {
    const GaussianCmax b = gaussian_cmax_bounds(Prior::gaussian(g0, sigma), tau);
    const auto [c1, c2] = c12_complex_erf(g0, sigma, tau);
    EXPECT_NEAR(b.c1, c1, 1e-10 * c1);
    EXPECT_NEAR(b.c2, c2, 1e-10 * c2);
  }
  const GaussianCmax ref = gaussian_cmax_bounds(Prior::gaussian(1.0, 1.0), kPi / 4);
  EXPECT_NEAR(ref.c1, 0.62153, 1e-5);
  EXPECT_NEAR(ref.c2, 0.68078, 1e-5);
}

TEST(MlGaussian, PointwiseBoundIsBindingAndExact) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Prior p = Prior::gaussian(0.5 + 1.5 * u(rng), 0.2 + 1.5 * u(rng));
    const double tau = (0.2 + 3.0 * u(rng)) / p.g0;
    if (std::abs(std::sin(2 * p.g0 * tau)) < 0.05) continue;
    const GaussianCmax b = gaussian_cmax_bounds(p, tau);
    EXPECT_LE(b.pointwise, b.interval() * (1 + 1e-12));
    EXPECT_EQ(b.c_max, b.pointwise);
    EXPECT_NEAR(b.pointwise, 1.0 / (std::sqrt(2 * kPi) * p.sigma * std::abs(std::sin(2 * p.g0 * tau))), 1e-14);
  }
}

TEST(MlGaussian, SinVanishes) {
  try {
    gaussian_cmax_bounds(Prior::gaussian(1.0, 1.0), kPi / 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SinVanishes);
  }
  const MlPovm povm = gaussian_ml_povm(Prior::gaussian(1.0, 1.0), kPi / 2, 0.0);
  EXPECT_TRUE(povm.fz_vanishes);
  EXPECT_NEAR(gaussian_cost_max(povm), 1.0 / std::sqrt(4 * kPi), 1e-15);
}

TEST(MlGaussian, CostClosedFormMatchesQuadrature) {
  const MlPovm povm = gaussian_ml_povm(Prior::gaussian(1.0, 1.0), kPi / 4, 0.0);
  EXPECT_NEAR(cost_max(povm), cost_max_quadrature(povm), 1e-8);
  const MlPovm decayed = gaussian_ml_povm(Prior::gaussian(1.0, 0.5), 1.7, 0.6);
  EXPECT_NEAR(cost_max(decayed), cost_max_quadrature(decayed), 1e-10);
}

TEST(MlGaussian, AverageEstimateClosedFormMatchesQuadrature) {
  const MlPovm povm = gaussian_ml_povm(Prior::gaussian(1.0, 0.4), 1.3, 0.2);
  for (double g : {0.5, 1.0, 1.4}) {
    EXPECT_NEAR(ml_average_estimate_closed(povm, g), ml_average_estimate(povm, g), 1e-10);
  }
}

TEST(MlGaussian, PrintedAverageEstimateDiffersFromQuadrature) {
  // The 4 sqrt(5 pi) prefactor does not reproduce the integral; the quadrature is
  // the reference. Record the size of the gap rather than assert agreement.
  const MlPovm povm = gaussian_ml_povm(Prior::gaussian(1.0, 1.0), kPi / 4, 0.0);
  // At g = g0 the bracket vanishes and both reduce to g0, so probe off-centre.
  const double q = ml_average_estimate(povm, 0.5);
  const double printed = ml_average_estimate_printed(povm, 0.5);
  EXPECT_GT(std::abs(printed - q), 1e-3);
  EXPECT_NEAR(ml_average_estimate_closed(povm, 0.5), q, 1e-10);
}

TEST(MlGaussian, AuditCatchesInflation) {
  const MlPovm povm = gaussian_ml_povm(Prior::gaussian(1.0, 1.0), kPi / 4, 0.0);
  const PositivityAudit ok = audit_positivity(povm, 10000, 42);
  EXPECT_TRUE(ok.ok());
  EXPECT_GE(ok.min_value, -1e-9);
  EXPECT_LE(ok.max_value, 1 + 1e-9);
  EXPECT_FALSE(audit_positivity(povm.scaled(1.05), 10000, 42).ok());
}

TEST(MlUniform, SpecialCase) {
  const double g0 = 1.0, tau = kPi / (4 * g0);
  const Prior p = Prior::uniform(g0, g0 / std::sqrt(3.0));
  EXPECT_NEAR(uniform_cmax(p, tau), 2 * tau / kPi, 1e-10);
  for (double gtf : {0.0, 1.0}) {
    const MlPovm povm = uniform_ml_povm(p, tau, gtf);
    EXPECT_NEAR(cost_max(povm), (2 + std::exp(-gtf)) / (4 * g0), 1e-10);
    EXPECT_NEAR(cost_max_quadrature(povm), (2 + std::exp(-gtf)) / (4 * g0), 1e-10);
    for (double g : {0.3, 1.0, 1.7}) {
      const double c = std::cos(kPi / 4 * g / g0);
      const double expected = g0 + 4 * g0 / (kPi * kPi) * (1 - 2 * std::exp(-gtf) * c * c);
      EXPECT_NEAR(ml_average_estimate(povm, g), expected, 1e-10);
      EXPECT_NEAR(ml_average_estimate_closed(povm, g), expected, 1e-12);
    }
  }
}

TEST(MlUniform, MinimaxIsTightOnRandomScan) {
  // c_max passes a dense random (x, y) scan of the interval family; 1.02 c_max does not.
  for (auto [g0, sigma, tau] : {std::tuple{1.0, 1.0, 0.7}, std::tuple{1.0, 0.3, 2.2}, std::tuple{1.5, 0.8, 0.5}}) {
    const Prior p = Prior::uniform(g0, sigma);
    const MlPovm povm = uniform_ml_povm(p, tau, 0.0);
    const double h = std::sqrt(3.0) * sigma;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto worst_violation = [&](double c) {
      double worst = 0.0;
      for (int i = 0; i < 100000; ++i) {
        double a = g0 - h + 2 * h * u(rng), b = g0 - h + 2 * h * u(rng);
        if (i % 2) b = a + (b - a) * 1e-3;
        if (a > b) std::swap(a, b);
        const double fi = (b - a) / (2 * h);
        const double fz = c * ((std::sin(2 * b * tau) - std::sin(2 * a * tau)) / (2 * tau) -
                               std::sin(2 * h * tau) * std::cos(2 * g0 * tau) / (2 * h * tau) * (b - a));
        worst = std::max({worst, -(fi - std::abs(fz)), fi + std::abs(fz) - 1});
      }
      return worst;
    };
    EXPECT_LE(worst_violation(povm.c), 1e-12);
    EXPECT_GT(worst_violation(1.02 * povm.c), 0.0);
  }
}

TEST(MlUniform, CostClosedFormMatchesQuadrature) {
  for (auto [sigma, tau] : {std::pair{1.0, 0.7}, std::pair{0.3, 2.2}, std::pair{0.5, 0.05}}) {
    const MlPovm povm = uniform_ml_povm(Prior::uniform(1.0, sigma), tau, 0.4);
    EXPECT_NEAR(cost_max(povm), cost_max_quadrature(povm), 1e-10);
    EXPECT_NEAR(ml_average_estimate_closed(povm, 1.1), ml_average_estimate(povm, 1.1), 1e-10);
  }
}

TEST(MlPovm, Completeness) {
  for (const MlPovm& povm : {ml_povm(Prior::gaussian(1.0, 1.0), 0.7, 0.0), ml_povm(Prior::uniform(1.0, 0.7), 1.2, 0.0)}) {
    EXPECT_NEAR(integrate_support(povm, [&](double x) { return povm.fI(x); }), 1.0, 1e-12);
    EXPECT_NEAR(integrate_support(povm, [&](double x) { return povm.fz(x); }), 0.0, 1e-12);
    // p(g~|g) integrates to one for any g
    EXPECT_NEAR(integrate_support(povm, [&](double x) { return conditional_pdf(povm, 0.8, x); }), 1.0, 1e-12);
  }
}
