#pragma once

#include <array>
#include <functional>

#include "jcest/hermitian2.hpp"
#include "jcest/jc_dynamics.hpp"
#include "jcest/ml.hpp"
#include "jcest/mmse.hpp"
#include "jcest/priors.hpp"

namespace jcest {

/// Closed-form SLD of the resonant vacuum state diag(p, 1 - p), p = cos^2(g tau) e^{-gamma tau_f}:
/// L = diag(-2 tau tan(g tau), tau sin(2 g tau) e^{-gamma tau_f} / (1 - p)).
/// Throws SingularSLD when cos(g tau) or 1 - p vanishes.
Hermitian2 sld(double g, double tau_c, double gamma_tau_f);

/// Analytic d rho / dg for the same state.
Hermitian2 resonant_state_derivative(double g, double tau_c, double gamma_tau_f);

/// Central difference of rho at g with step h, Richardson-extrapolated (h, h/2).
Hermitian2 state_derivative(const std::function<QubitState(double)>& rho, double g, double h);

/// Solves d rho = (L rho + rho L)/2 in the eigenbasis of rho; entries whose
/// eigenvalue pair sums below 1e-12 are set to zero.
Hermitian2 sld_from_derivative(const Hermitian2& rho, const Hermitian2& drho);

struct BoundReport {
  double g = 0.0;
  double mse = 0.0;            // E[(g~ - g)^2 | g]
  double lower_bound = 0.0;    // |x'| / Tr(rho L^2), or the strategy's printed closed form
  double squared_bound = 0.0;  // x'^2 / Tr(rho L^2)
  double x_prime = 0.0;
  double fisher = 0.0;         // Tr(rho L^2)
  std::array<double, 2> sld_eigs{};
  bool inconclusive = false;   // estimator insensitive to g; bounds reported as 0
};

/// Generic path: x' = Tr(M d rho/dg) with d rho/dg by finite differences
/// (h = 1e-6 g0), L from sld_from_derivative. Works for any unitary scenario.
BoundReport cr_bound_mmse(const MmseResult& r, double g, const Prior& prior, const Scenario& s,
                          const FieldState& field);

/// Resonant-vacuum closed form
/// (1 - p) |sin 2g tau| / (4 tau sin^2 g tau) * |g0 - b/a| / (1 - a e^{-gamma tau_f}).
double cr_bound_mmse_closed(const Prior& prior, double tau_c, double gamma_tau_f, double g);

/// ML strategy. lower_bound follows the closed-form expression written for
/// the Gaussian POVM, (1 - p)/sin^2(g tau) |sin 2 g tau| 2 sqrt(5 pi) sigma^2
/// e^{-2 sigma^2 tau^2} |c sin 2 g0 tau|; for the uniform POVM it is the
/// generic |x'|/F, which equals the special-case expression
/// (8 g0^2/pi^2) (1 - p) |sin 2 g tau| / (pi sin^2 g tau) where that applies.
BoundReport cr_bound_ml(const MlPovm& povm, double g);

/// |x'|/F for the ML POVM with x' = 2 p'(g) * integral of g~ fz.
double ml_generic_bound(const MlPovm& povm, double g);

}  // namespace jcest
