#include "jcest/mmse.hpp"

#include <cmath>
#include <vector>

#include "jcest/error.hpp"
#include "jcest/parallel.hpp"

namespace jcest {
namespace {

const double kSqrt3 = std::sqrt(3.0);

GammaTriple accumulate(const QuadratureRule& rule, const std::vector<Hermitian2>& rho) {
  GammaTriple out;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double g = rule.nodes[i];
    const double w = rule.weights[i] * rule.density[i];
    out.gamma0 += rho[i] * w;
    out.gamma1 += rho[i] * (w * g);
    out.gamma2 += rho[i] * (w * g * g);
  }
  return out;
}

// Averages over t uniform on [-1, 1]: sin(xt)/..., written as power series
// near zero where the closed forms cancel.
//   avg cos(xt)      = sin x / x
//   avg t sin(xt)    = (sin x - x cos x) / x^2
//   avg t^2 cos(xt)  = sin x / x + 2 cos x / x^2 - 2 sin x / x^3
double avg_cos(double x) {
  if (std::abs(x) < 0.5) {
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 12; ++m) {
      term *= -x * x / ((2.0 * m) * (2.0 * m + 1.0));
      sum += term;
    }
    return sum;
  }
  return std::sin(x) / x;
}

double avg_t_sin(double x) {
  if (std::abs(x) < 0.5) {
    // sum_m (-1)^m x^(2m+1) / ((2m+1)! (2m+3))
    double fact_term = x;  // (-1)^m x^(2m+1)/(2m+1)!
    double sum = fact_term / 3.0;
    for (int m = 1; m < 12; ++m) {
      fact_term *= -x * x / ((2.0 * m) * (2.0 * m + 1.0));
      sum += fact_term / (2.0 * m + 3.0);
    }
    return sum;
  }
  return (std::sin(x) - x * std::cos(x)) / (x * x);
}

double avg_t2_cos(double x) {
  if (std::abs(x) < 0.5) {
    // sum_m (-1)^m x^(2m) / ((2m)! (2m+3))
    double fact_term = 1.0;
    double sum = 1.0 / 3.0;
    for (int m = 1; m < 12; ++m) {
      fact_term *= -x * x / ((2.0 * m - 1.0) * (2.0 * m));
      sum += fact_term / (2.0 * m + 3.0);
    }
    return sum;
  }
  const double x2 = x * x;
  return std::sin(x) / x + 2.0 * std::cos(x) / x2 - 2.0 * std::sin(x) / (x2 * x);
}

MmseResult finish(const Hermitian2& m, const GammaTriple& gammas) {
  MmseResult r;
  r.m_min = m;
  const Eigen2 eig = eigendecompose(m);
  r.estimates = eig.values;
  r.projectors = eig.vectors;
  r.excited_index = std::norm(eig.vectors[1].e) >= std::norm(eig.vectors[0].e) ? 1 : 0;
  r.c_min = gammas.gamma2.trace() - trace_product(gammas.gamma0, square(m));
  return r;
}

}  // namespace

GammaTriple gamma_moments(const QuadratureRule& rule, const StateFunction& rho) {
  std::vector<Hermitian2> states(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) { states[i] = rho(rule.nodes[i]).matrix(); });
  return accumulate(rule, states);
}

GammaTriple gamma_moments_serial(const QuadratureRule& rule, const StateFunction& rho) {
  std::vector<Hermitian2> states(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) states[i] = rho(rule.nodes[i]).matrix();
  return accumulate(rule, states);
}

GammaTriple gamma_moments(const Prior& prior, const Scenario& s, const FieldState& field, int n_points) {
  s.validate();
  const QuadratureRule rule = quadrature(prior, n_points, state_frequency_hint(s, field));
  return gamma_moments(rule, [&](double g) { return detector_state(g, s, field); });
}

GammaTriple gamma_moments_serial(const Prior& prior, const Scenario& s, const FieldState& field,
                                 int n_points) {
  s.validate();
  const QuadratureRule rule = quadrature(prior, n_points, state_frequency_hint(s, field));
  return gamma_moments_serial(rule, [&](double g) { return detector_state(g, s, field); });
}

Abc closed_form_abc(const Prior& prior, double tau_c) {
  const double g0 = prior.g0;
  const double s2 = prior.sigma * prior.sigma;
  const double t = tau_c;
  const double cos0 = std::cos(2.0 * g0 * t);
  const double sin0 = std::sin(2.0 * g0 * t);
  if (prior.kind == PriorKind::Gaussian) {
    const double e = std::exp(-2.0 * s2 * t * t);
    const double a = 0.5 * (1.0 + e * cos0);
    const double b = 0.5 * (g0 + e * (g0 * cos0 - 2.0 * s2 * t * sin0));
    const double c = 0.5 * (g0 * g0 + s2) * (1.0 + e * cos0) - 2.0 * g0 * s2 * t * e * sin0 -
                     2.0 * s2 * s2 * t * t * e * cos0;
    return {a, b, c};
  }
  // cos^2(g t) = (1 + cos 2gt)/2 averaged over g = g0 + h u, u uniform on [-1, 1].
  const double h = kSqrt3 * prior.sigma;
  const double x = 2.0 * h * t;
  const double k0 = avg_cos(x);
  const double k1 = avg_t_sin(x);
  const double k2 = avg_t2_cos(x);
  const double a = 0.5 * (1.0 + cos0 * k0);
  const double b = 0.5 * (g0 + g0 * cos0 * k0 - h * sin0 * k1);
  const double c = 0.5 * (g0 * g0 + s2) + 0.5 * (g0 * g0 * cos0 * k0 - 2.0 * g0 * h * sin0 * k1 + h * h * cos0 * k2);
  return {a, b, c};
}

GammaTriple closed_form_gammas(const Prior& prior, double tau_c, double gamma_tau_f) {
  const Abc abc = closed_form_abc(prior, tau_c);
  const double e = std::exp(-gamma_tau_f);
  const double g0 = prior.g0;
  const double second = g0 * g0 + prior.sigma * prior.sigma;
  return {Hermitian2::diag(abc.a * e, 1.0 - abc.a * e), Hermitian2::diag(abc.b * e, g0 - abc.b * e),
          Hermitian2::diag(abc.c * e, second - abc.c * e)};
}

MmseResult mmse_estimator(const GammaTriple& gammas) {
  return finish(solve_symmetric_product(gammas.gamma0, gammas.gamma1), gammas);
}

MmseResult mmse_closed_form(const Prior& prior, double tau_c, double gamma_tau_f) {
  const Abc abc = closed_form_abc(prior, tau_c);
  const double e = std::exp(-gamma_tau_f);
  const double g0 = prior.g0;
  const double ground_weight = 1.0 - abc.a * e;
  if (abc.a * e <= 1e-14 || ground_weight <= 1e-14) {
    throw Error(ErrorCode::DegenerateGamma0, "closed-form Gamma0 has a vanishing diagonal entry");
  }
  const double m_e = abc.b / abc.a;
  const double m_g = (g0 - abc.b * e) / ground_weight;
  MmseResult r;
  r.m_min = Hermitian2::diag(m_e, m_g);
  const Eigen2 eig = eigendecompose(r.m_min);
  r.estimates = eig.values;
  r.projectors = eig.vectors;
  r.excited_index = std::norm(eig.vectors[1].e) >= std::norm(eig.vectors[0].e) ? 1 : 0;
  r.c_min = g0 * g0 + prior.sigma * prior.sigma - m_g * m_g - abc.a * e * (m_e * m_e - m_g * m_g);
  return r;
}

MmseResult solve_mmse(const Prior& prior, const Scenario& s, const FieldState& field, int n_points) {
  return mmse_estimator(gamma_moments(prior, s, field, n_points));
}

double limit_eigenvalue_tau0(const Prior& prior) {
  const double g0 = prior.g0;
  const double s2 = prior.sigma * prior.sigma;
  return g0 * (3.0 * s2 + g0 * g0) / (s2 + g0 * g0);
}

double average_estimate(const MmseResult& r, const QubitState& rho) {
  return trace_product(r.m_min, rho.matrix());
}

double average_estimate(const MmseResult& r, double g, const Scenario& s, const FieldState& field) {
  return average_estimate(r, detector_state(g, s, field));
}

double mse_of_estimator(const MmseResult& r, double g, const QubitState& rho) {
  return trace_product(square(r.m_min - Hermitian2::identity(g)), rho.matrix());
}

double mse_of_estimator(const MmseResult& r, double g, const Scenario& s, const FieldState& field) {
  return mse_of_estimator(r, g, detector_state(g, s, field));
}

}  // namespace jcest
