#pragma once

#include <array>
#include <functional>

#include "jcest/hermitian2.hpp"
#include "jcest/jc_dynamics.hpp"
#include "jcest/priors.hpp"

namespace jcest {

/// Gamma_k = integral of g^k z(g) rho(g) dg, k = 0, 1, 2.
struct GammaTriple {
  Hermitian2 gamma0;
  Hermitian2 gamma1;
  Hermitian2 gamma2;
};

using StateFunction = std::function<QubitState(double)>;

/// Evaluates rho at every node in parallel, then sums in node order, so the
/// result is bit-identical to gamma_moments_serial.
GammaTriple gamma_moments(const QuadratureRule& rule, const StateFunction& rho);
GammaTriple gamma_moments_serial(const QuadratureRule& rule, const StateFunction& rho);

/// Builds the quadrature (sized for the scenario's oscillation frequency) and
/// integrates detector_state over it.
GammaTriple gamma_moments(const Prior& prior, const Scenario& s, const FieldState& field,
                          int n_points = 256);
GammaTriple gamma_moments_serial(const Prior& prior, const Scenario& s, const FieldState& field,
                                 int n_points = 256);

/// Scalars of the resonant-vacuum Gammas before flight decay:
/// Gamma0 = diag(a E, 1 - a E), Gamma1 = diag(b E, g0 - b E), Gamma2 = diag(c E, g0^2 + sigma^2 - c E).
struct Abc {
  double a;
  double b;
  double c;
};
Abc closed_form_abc(const Prior& prior, double tau_c);

/// Gammas assembled from closed_form_abc.
GammaTriple closed_form_gammas(const Prior& prior, double tau_c, double gamma_tau_f);

struct MmseResult {
  Hermitian2 m_min;
  std::array<double, 2> estimates{};  // eigenvalues of m_min, ascending
  std::array<Vec2, 2> projectors{};   // matching eigenvectors
  double c_min = 0.0;
  int excited_index = 1;  // which estimate belongs to the eigenvector closer to |e>

  double excited_estimate() const { return estimates[excited_index]; }
  double ground_estimate() const { return estimates[1 - excited_index]; }
};

/// Solves Gamma0 M + M Gamma0 = 2 Gamma1 and evaluates Tr(Gamma2 - M Gamma0 M).
/// Throws DegenerateGamma0.
MmseResult mmse_estimator(const GammaTriple& gammas);

/// Resonant vacuum closed form: M = diag(b/a, (g0 - bE)/(1 - aE)) and the
/// matching C_min expression. Throws DegenerateGamma0 when 1 - aE vanishes.
MmseResult mmse_closed_form(const Prior& prior, double tau_c, double gamma_tau_f);

/// Convenience: gamma_moments followed by mmse_estimator.
MmseResult solve_mmse(const Prior& prior, const Scenario& s, const FieldState& field, int n_points = 256);

/// Ground-branch eigenvalue as tau_c -> 0+: g0 (3 sigma^2 + g0^2) / (sigma^2 + g0^2).
double limit_eigenvalue_tau0(const Prior& prior);

/// E[g~|g] = Tr(M rho(g)).
double average_estimate(const MmseResult& r, const QubitState& rho);
double average_estimate(const MmseResult& r, double g, const Scenario& s, const FieldState& field);

/// Tr((M - g)^2 rho(g)).
double mse_of_estimator(const MmseResult& r, double g, const QubitState& rho);
double mse_of_estimator(const MmseResult& r, double g, const Scenario& s, const FieldState& field);

}  // namespace jcest
