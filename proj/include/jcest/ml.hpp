#pragma once

#include <cstdint>
#include <functional>

#include "jcest/priors.hpp"

namespace jcest {

/// Maximum-likelihood POVM density dPi(g~) = [[fI + fz, 0], [0, fI - fz]] dg~
/// for the resonant vacuum transit. fx = fy = 0: the average cost does not
/// depend on them.
struct MlPovm {
  Prior prior;
  double tau_c = 0.0;
  double gamma_tau_f = 0.0;
  double c = 0.0;             // normalization actually used (c_max unless rescaled)
  bool fz_vanishes = false;   // fz is identically zero (c unconstrained)

  double fI(double x) const;
  double fz(double x) const;
  /// Same POVM shape with c multiplied by `factor` (used to probe the feasibility edge).
  MlPovm scaled(double factor) const;
};

/// The Gaussian normalization candidates:
///   c1, c2    — from the two half-period integral inequalities (adaptive quadrature)
///   pointwise — 1 / (sqrt(2 pi) sigma |sin 2 g0 tau|), i.e. fI >= |fz| everywhere
///   c_max     — the smallest of the three.
struct GaussianCmax {
  double c1;
  double c2;
  double pointwise;
  double c_max;
  double interval() const { return c1 < c2 ? c1 : c2; }
};

/// Throws SinVanishes when |sin(2 g0 tau)| < 1e-14.
GaussianCmax gaussian_cmax_bounds(const Prior& prior, double tau_c);
double gaussian_cmax(const Prior& prior, double tau_c);
MlPovm gaussian_ml_povm(const Prior& prior, double tau_c, double gamma_tau_f);
/// 1/sqrt(4 pi sigma^2) + c E (1 - exp(-4 sigma^2 tau^2)) / (2 sqrt 2) sin^2(2 g0 tau).
double gaussian_cost_max(const MlPovm& povm);

/// Largest c keeping 0 <= x +- c k(x, y) <= 1 over the (x, y) interval
/// parameterisation of the uniform support; dense grid plus local zoom.
/// Returns +inf when the constraint is inactive.
double uniform_cmax(const Prior& prior, double tau_c);
MlPovm uniform_ml_povm(const Prior& prior, double tau_c, double gamma_tau_f);
/// 1/(2 sqrt3 sigma) + c E [1/2 - K^2 + sin(4 sqrt3 sigma tau) cos(4 g0 tau) / (8 sqrt3 sigma tau)],
/// K = sin(2 sqrt3 sigma tau) cos(2 g0 tau) / (2 sqrt3 sigma tau).
double uniform_cost_max(const MlPovm& povm);

/// Dispatches on prior kind.
MlPovm ml_povm(const Prior& prior, double tau_c, double gamma_tau_f);
double cost_max(const MlPovm& povm);

/// Integral of z(g~) Tr(rho(g~) dPi(g~)) by composite quadrature.
double cost_max_quadrature(const MlPovm& povm);

/// p(g~|g) = fI(g~) + fz(g~) (2 cos^2(g tau) e^{-gamma tau_f} - 1).
double conditional_pdf(const MlPovm& povm, double g, double g_tilde);

/// Integral of f over the POVM's support on a composite rule fine enough for
/// products of fz with cos(2 g tau).
double integrate_support(const MlPovm& povm, const std::function<double(double)>& f);

/// E[g~|g] by quadrature.
double ml_average_estimate(const MlPovm& povm, double g);
/// Closed form of the same integral: Gaussian and uniform, any parameters.
double ml_average_estimate_closed(const MlPovm& povm, double g);
/// The Gaussian expression with the 4 sqrt(5 pi) sigma^2 prefactor, for comparison only.
double ml_average_estimate_printed(const MlPovm& povm, double g);
/// E[(g~ - g)^2 | g] by quadrature.
double ml_mse(const MlPovm& povm, double g);
/// Integral of g~ fz(g~); enters x'(g).
double fz_first_moment(const MlPovm& povm);

struct PositivityAudit {
  int intervals = 0;
  int violations = 0;
  double min_value = 0.0;  // smallest integral of fI +- fz seen
  double max_value = 0.0;  // largest
  bool ok() const { return violations == 0; }
};

/// Checks 0 <= integral over [u, v] of (fI +- fz) <= 1 (tolerance 1e-9) for
/// random compact intervals: half with uniform endpoints over the support
/// (Gaussian: g0 +- 8 sigma), half centred uniformly with log-uniform width.
PositivityAudit audit_positivity(const MlPovm& povm, int n_intervals, std::uint64_t seed);

}  // namespace jcest
