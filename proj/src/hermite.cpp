#include "jcest/hermite.hpp"

#include <cmath>
#include <numbers>

namespace jcest {

std::vector<double> hermite_functions(int nmax, double x) {
  std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
  psi[0] = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  if (nmax >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int n = 1; n < nmax; ++n) {
    psi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * psi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * psi[n - 1];
  }
  return psi;
}

double hermite_function(int n, double x) { return hermite_functions(n, x)[static_cast<std::size_t>(n)]; }

HermiteExpansion cosine_expansion(double sigma, double g0, double tau_c, int n_basis) {
  HermiteExpansion e;
  e.coefficients.resize(static_cast<std::size_t>(n_basis) + 1);
  const double st = sigma * tau_c;
  const double c = std::cos(2.0 * g0 * tau_c);
  const double s = std::sin(2.0 * g0 * tau_c);
  // pi^(1/4) (2 sigma tau)^n / sqrt(2^n n!) e^{-sigma^2 tau^2}, built by ratios.
  double mag = std::pow(std::numbers::pi, 0.25) * std::exp(-st * st);
  for (int n = 0; n <= n_basis; ++n) {
    if (n > 0) mag *= std::sqrt(2.0) * st / std::sqrt(static_cast<double>(n));
    double v;
    if (n % 2 == 0) {
      v = ((n / 2) % 2 == 0 ? 1.0 : -1.0) * mag * c;
    } else {
      v = (((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0) * mag * s;
    }
    e.coefficients[static_cast<std::size_t>(n)] = v;
  }
  return e;
}

double HermiteExpansion::value(double x) const {
  const int nmax = static_cast<int>(coefficients.size()) - 1;
  const std::vector<double> psi = hermite_functions(nmax, x);
  double sum = 0.0;
  for (int n = 0; n <= nmax; ++n) sum += coefficients[n] * psi[n];
  return sum;
}

double HermiteExpansion::odd_part(double x) const {
  const int nmax = static_cast<int>(coefficients.size()) - 1;
  const std::vector<double> psi = hermite_functions(nmax, x);
  double sum = 0.0;
  for (int n = 1; n <= nmax; n += 2) sum += coefficients[n] * psi[n];
  return sum;
}

bool HermiteExpansion::tail_converged() const {
  return !coefficients.empty() && std::abs(coefficients.back()) < 1e-12;
}

}  // namespace jcest
