#include "jcest/hermitian2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jcest/error.hpp"

namespace jcest {
namespace {

// <u|m|w>
cplx bracket(const Vec2& u, const Hermitian2& m, const Vec2& w) {
  const cplx mw_e = m.ee * w.e + m.eg * w.g;
  const cplx mw_g = m.ge() * w.e + m.gg * w.g;
  return std::conj(u.e) * mw_e + std::conj(u.g) * mw_g;
}

Vec2 normalized_with_phase(Vec2 v) {
  const double n = std::sqrt(std::norm(v.e) + std::norm(v.g));
  v.e /= n;
  v.g /= n;
  const cplx lead = std::abs(v.e) > 1e-300 ? v.e : v.g;
  const cplx phase = std::conj(lead) / std::abs(lead);
  v.e *= phase;
  v.g *= phase;
  // Exact zero imaginary part on the leading component.
  if (std::abs(v.e) > 1e-300) {
    v.e = std::abs(v.e);
  } else {
    v.g = std::abs(v.g);
  }
  return v;
}

}  // namespace

double trace_product(const Hermitian2& a, const Hermitian2& b) {
  return a.ee * b.ee + a.gg * b.gg + 2.0 * std::real(a.eg * std::conj(b.eg));
}

Hermitian2 anticommutator(const Hermitian2& a, const Hermitian2& b) {
  const double cross = 2.0 * std::real(a.eg * std::conj(b.eg));
  return {2.0 * a.ee * b.ee + cross, 2.0 * a.gg * b.gg + cross,
          b.eg * (a.ee + a.gg) + a.eg * (b.ee + b.gg)};
}

Hermitian2 sandwich(const Hermitian2& a, const Hermitian2& b) {
  // (AB) as a general 2x2 matrix, then (AB)A keeping the upper triangle.
  const cplx ab_ee = a.ee * b.ee + a.eg * b.ge();
  const cplx ab_eg = a.ee * b.eg + a.eg * b.gg;
  const cplx ab_ge = a.ge() * b.ee + a.gg * b.ge();
  const cplx ab_gg = a.ge() * b.eg + a.gg * b.gg;
  return {std::real(ab_ee * a.ee + ab_eg * a.ge()), std::real(ab_ge * a.eg + ab_gg * a.gg),
          ab_ee * a.eg + ab_eg * a.gg};
}

Hermitian2 square(const Hermitian2& a) {
  const double off = std::norm(a.eg);
  return {a.ee * a.ee + off, a.gg * a.gg + off, a.eg * (a.ee + a.gg)};
}

double expectation(const Hermitian2& a, const Vec2& v) { return std::real(bracket(v, a, v)); }

Hermitian2 outer(const Vec2& v) { return {std::norm(v.e), std::norm(v.g), v.e * std::conj(v.g)}; }

double max_abs_diff(const Hermitian2& a, const Hermitian2& b) {
  return std::max({std::abs(a.ee - b.ee), std::abs(a.gg - b.gg), std::abs(a.eg - b.eg)});
}

Hermitian2 Eigen2::reconstruct() const {
  return values[0] * outer(vectors[0]) + values[1] * outer(vectors[1]);
}

Hermitian2 Eigen2::to_eigenbasis(const Hermitian2& m) const {
  return {std::real(bracket(vectors[0], m, vectors[0])), std::real(bracket(vectors[1], m, vectors[1])),
          bracket(vectors[0], m, vectors[1])};
}

Hermitian2 Eigen2::from_eigenbasis(const Hermitian2& mt) const {
  const Vec2& u = vectors[0];
  const Vec2& w = vectors[1];
  // V mt V^dagger with V = [u w].
  auto entry = [&](cplx ui, cplx wi, cplx uj, cplx wj) {
    return ui * (mt.ee * std::conj(uj) + mt.eg * std::conj(wj)) +
           wi * (mt.ge() * std::conj(uj) + mt.gg * std::conj(wj));
  };
  return {std::real(entry(u.e, w.e, u.e, w.e)), std::real(entry(u.g, w.g, u.g, w.g)),
          entry(u.e, w.e, u.g, w.g)};
}

Eigen2 eigendecompose(const Hermitian2& m) {
  Eigen2 out;
  const double t = 0.5 * (m.ee + m.gg);
  const double d = 0.5 * (m.ee - m.gg);
  const double r = std::hypot(d, std::abs(m.eg));
  if (r == 0.0) {
    out.values = {t, t};
    out.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    return out;
  }
  // The eigenvalue of smaller magnitude comes from det / (larger one), which
  // keeps relative accuracy when the spectrum is very lopsided.
  double lo = t - r;
  double hi = t + r;
  const double det = m.det();
  if (t > 0.0) {
    lo = det / hi;
  } else if (t < 0.0) {
    hi = det / lo;
  }
  out.values = {lo, hi};

  // Eigenvector of the lower eigenvalue from whichever row avoids cancellation.
  Vec2 v = d >= 0.0 ? Vec2{m.eg, -(d + r)} : Vec2{-(r - d), std::conj(m.eg)};
  v = normalized_with_phase(v);
  Vec2 w{-std::conj(v.g), std::conj(v.e)};
  w = normalized_with_phase(w);
  out.vectors = {v, w};
  return out;
}

Hermitian2 solve_symmetric_product(const Hermitian2& gamma0, const Hermitian2& gamma1) {
  const Eigen2 eig = eigendecompose(gamma0);
  const double l0 = eig.values[0];
  const double l1 = eig.values[1];
  constexpr double kMinPairSum = 1e-14;
  if (2.0 * l0 <= kMinPairSum || l0 + l1 <= kMinPairSum) {
    std::ostringstream os;
    os << "gamma0 eigenvalues (" << l0 << ", " << l1 << ") leave the operator equation singular";
    throw Error(ErrorCode::DegenerateGamma0, os.str());
  }
  const Hermitian2 g1 = eig.to_eigenbasis(gamma1);
  const Hermitian2 mt{g1.ee / l0, g1.gg / l1, 2.0 * g1.eg / (l0 + l1)};
  return eig.from_eigenbasis(mt);
}

QubitState QubitState::from_matrix(const Hermitian2& m, double tol) {
  if (std::abs(m.trace() - 1.0) > tol) {
    std::ostringstream os;
    os << "density matrix trace " << m.trace() << " differs from 1";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const Eigen2 eig = eigendecompose(m);
  if (eig.values[0] < -tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << eig.values[0];
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return QubitState(m);
}

}  // namespace jcest
