#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "jcest/error.hpp"
#include "jcest/hermitian2.hpp"

using namespace jcest;

namespace {

Hermitian2 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), {u(rng), u(rng)}};
}

Eigen::Matrix2cd dense(const Hermitian2& m) {
  Eigen::Matrix2cd d;
  d << m.ee, m.eg, std::conj(m.eg), m.gg;
  return d;
}

}  // namespace

TEST(Hermitian2, EigenvaluesMatchEigenSolver) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Hermitian2 m = random_hermitian(rng);
    const Eigen2 e = eigendecompose(m);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> ref(dense(m));
    EXPECT_NEAR(e.values[0], ref.eigenvalues()(0), 1e-13);
    EXPECT_NEAR(e.values[1], ref.eigenvalues()(1), 1e-13);
    EXPECT_LT(max_abs_diff(e.reconstruct(), m), 1e-13);
    for (const Vec2& v : e.vectors) {
      EXPECT_NEAR(std::norm(v.e) + std::norm(v.g), 1.0, 1e-14);
    }
    const cplx overlap = std::conj(e.vectors[0].e) * e.vectors[1].e + std::conj(e.vectors[0].g) * e.vectors[1].g;
    EXPECT_LT(std::abs(overlap), 1e-14);
  }
}

TEST(Hermitian2, PhaseConventionFirstComponentRealPositive) {
  const Eigen2 e = eigendecompose({0.3, -0.2, {0.1, 0.4}});
  for (const Vec2& v : e.vectors) {
    EXPECT_EQ(v.e.imag(), 0.0);
    EXPECT_GT(v.e.real(), 0.0);
  }
}

TEST(Hermitian2, LopsidedSpectrumKeepsRelativeAccuracy) {
  // eigenvalues 1 and 1e-14 rotated by a known unitary
  const double c = std::cos(0.3), s = std::sin(0.3);
  const double big = 1.0, small = 1e-14;
  const Hermitian2 m{big * c * c + small * s * s, big * s * s + small * c * c, {(big - small) * c * s, 0.0}};
  const Eigen2 e = eigendecompose(m);
  EXPECT_NEAR(e.values[0] / small, 1.0, 1e-2);
  EXPECT_NEAR(e.values[1], big, 1e-15);
}

TEST(Hermitian2, DiagonalAndScalarCases) {
  const Eigen2 d = eigendecompose(Hermitian2::diag(2.0, -1.0));
  EXPECT_EQ(d.values[0], -1.0);
  EXPECT_EQ(d.values[1], 2.0);
  const Eigen2 s = eigendecompose(Hermitian2::identity(3.0));
  EXPECT_EQ(s.values[0], 3.0);
  EXPECT_EQ(s.values[1], 3.0);
}

TEST(Hermitian2, ProductsMatchDenseAlgebra) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Hermitian2 a = random_hermitian(rng), b = random_hermitian(rng);
    const Eigen::Matrix2cd da = dense(a), db = dense(b);
    EXPECT_NEAR(trace_product(a, b), (da * db).trace().real(), 1e-14);
    EXPECT_LT((dense(anticommutator(a, b)) - (da * db + db * da)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((dense(sandwich(a, b)) - da * db * da).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((dense(square(a)) - da * da).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Hermitian2, SymmetricProductSolveResidual) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Hermitian2 g0 = square(random_hermitian(rng)) + Hermitian2::identity(0.05);
    const Hermitian2 g1 = random_hermitian(rng);
    const Hermitian2 m = solve_symmetric_product(g0, g1);
    EXPECT_LT(max_abs_diff(anticommutator(g0, m), g1 * 2.0), 1e-12);
  }
}

TEST(Hermitian2, SymmetricProductRejectsSingularGamma0) {
  try {
    solve_symmetric_product(Hermitian2::diag(1.0, 0.0), Hermitian2::identity());
    FAIL() << "expected DegenerateGamma0";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateGamma0);
  }
}

TEST(Hermitian2, QubitStateValidation) {
  EXPECT_NO_THROW(QubitState::from_matrix({0.5, 0.5, {0.5, 0.0}}));
  EXPECT_THROW(QubitState::from_matrix({0.6, 0.5, {}}), Error);        // trace
  EXPECT_THROW(QubitState::from_matrix({0.5, 0.5, {0.6, 0.0}}), Error);  // negative eigenvalue
  const QubitState q = QubitState::trusted({0.25, 0.75, {0.1, -0.2}});
  EXPECT_EQ(q.excited_population(), 0.25);
  EXPECT_EQ(q.coherence(), cplx(0.1, -0.2));
}
