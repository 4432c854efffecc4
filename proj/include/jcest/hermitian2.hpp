#pragma once

#include <array>
#include <complex>

namespace jcest {

using cplx = std::complex<double>;

/// Column vector in the fixed (|e>, |g>) basis.
struct Vec2 {
  cplx e{};
  cplx g{};
};

/// 2x2 Hermitian matrix in the (|e>, |g>) basis. Only the upper triangle is
/// stored; the (g,e) entry is conj(eg) by construction.
struct Hermitian2 {
  double ee = 0.0;
  double gg = 0.0;
  cplx eg{};

  static constexpr Hermitian2 diag(double e, double g) { return {e, g, {}}; }
  static constexpr Hermitian2 identity(double scale = 1.0) { return {scale, scale, {}}; }

  cplx ge() const { return std::conj(eg); }
  double trace() const { return ee + gg; }
  double det() const { return ee * gg - std::norm(eg); }

  Hermitian2& operator+=(const Hermitian2& o) {
    ee += o.ee;
    gg += o.gg;
    eg += o.eg;
    return *this;
  }
  Hermitian2& operator-=(const Hermitian2& o) {
    ee -= o.ee;
    gg -= o.gg;
    eg -= o.eg;
    return *this;
  }
  Hermitian2& operator*=(double s) {
    ee *= s;
    gg *= s;
    eg *= s;
    return *this;
  }
};

inline Hermitian2 operator+(Hermitian2 a, const Hermitian2& b) { return a += b; }
inline Hermitian2 operator-(Hermitian2 a, const Hermitian2& b) { return a -= b; }
inline Hermitian2 operator*(Hermitian2 a, double s) { return a *= s; }
inline Hermitian2 operator*(double s, Hermitian2 a) { return a *= s; }

/// Tr(AB), real for Hermitian A and B.
double trace_product(const Hermitian2& a, const Hermitian2& b);

/// AB + BA.
Hermitian2 anticommutator(const Hermitian2& a, const Hermitian2& b);

/// A B A.
Hermitian2 sandwich(const Hermitian2& a, const Hermitian2& b);

/// A^2.
Hermitian2 square(const Hermitian2& a);

/// <v|A|v>.
double expectation(const Hermitian2& a, const Vec2& v);

/// v v^dagger.
Hermitian2 outer(const Vec2& v);

/// Largest absolute entry difference.
double max_abs_diff(const Hermitian2& a, const Hermitian2& b);

struct Eigen2 {
  std::array<double, 2> values{};  // ascending
  std::array<Vec2, 2> vectors{};   // orthonormal, first nonzero component real positive

  Hermitian2 reconstruct() const;
  /// V^dagger m V, i.e. m expressed in this eigenbasis.
  Hermitian2 to_eigenbasis(const Hermitian2& m) const;
  /// Inverse of to_eigenbasis.
  Hermitian2 from_eigenbasis(const Hermitian2& mt) const;
};

/// Closed-form eigendecomposition.
Eigen2 eigendecompose(const Hermitian2& m);

/// Solves gamma0 M + M gamma0 = 2 gamma1 in the eigenbasis of gamma0.
/// Throws Error(DegenerateGamma0) if any eigenvalue pair sum is <= 1e-14.
Hermitian2 solve_symmetric_product(const Hermitian2& gamma0, const Hermitian2& gamma1);

/// A density matrix: unit trace and positive semidefinite.
class QubitState {
 public:
  /// Validates trace and positivity to `tol`; throws Error(InvalidArgument).
  static QubitState from_matrix(const Hermitian2& m, double tol = 1e-12);
  /// Skips validation; for hot loops where the producer guarantees the invariants.
  static QubitState trusted(const Hermitian2& m) { return QubitState(m); }

  const Hermitian2& matrix() const { return m_; }
  double excited_population() const { return m_.ee; }
  double ground_population() const { return m_.gg; }
  cplx coherence() const { return m_.eg; }

 private:
  explicit QubitState(const Hermitian2& m) : m_(m) {}
  Hermitian2 m_;
};

}  // namespace jcest
