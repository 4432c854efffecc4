#pragma once

#include <vector>

namespace jcest {

/// Orthonormal Hermite function psi_n(x) = exp(-x^2/2) H_n(x) / sqrt(sqrt(pi) 2^n n!).
double hermite_function(int n, double x);

/// psi_0..psi_nmax at x via the three-term recurrence.
std::vector<double> hermite_functions(int nmax, double x);

/// Expansion of cos(2 sigma tau x + 2 g0 tau) exp(-x^2/2) in the psi_n basis.
struct HermiteExpansion {
  std::vector<double> coefficients;

  double value(double x) const;
  /// Sum over odd n only; converges to -sin(2 g0 tau) sin(2 sigma tau x) exp(-x^2/2).
  double odd_part(double x) const;
  /// |last coefficient| below 1e-12.
  bool tail_converged() const;
};

HermiteExpansion cosine_expansion(double sigma, double g0, double tau_c, int n_basis = 40);

}  // namespace jcest
