#include "jcest/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jcest/error.hpp"

namespace jcest {
namespace {

constexpr double kInconclusive = 1e-10;

// For both priors the first moment of fz, hence x', carries a factor sin(2 g0 tau).
bool ml_insensitive(const MlPovm& povm) {
  return povm.fz_vanishes || std::abs(std::sin(2.0 * povm.prior.g0 * povm.tau_c)) < 1e-14;
}

struct Fisher {
  Hermitian2 L;
  double fisher;
};

Fisher fisher_of(const Hermitian2& rho, const Hermitian2& drho) {
  const Hermitian2 L = sld_from_derivative(rho, drho);
  return {L, trace_product(rho, square(L))};
}

void fill_bounds(BoundReport& rep) {
  if (rep.inconclusive || rep.fisher <= 0.0) {
    rep.lower_bound = rep.squared_bound = 0.0;
    return;
  }
  rep.lower_bound = std::abs(rep.x_prime) / rep.fisher;
  rep.squared_bound = rep.x_prime * rep.x_prime / rep.fisher;
}

}  // namespace

Hermitian2 sld(double g, double tau_c, double gamma_tau_f) {
  const double c = std::cos(g * tau_c);
  const double e = std::exp(-gamma_tau_f);
  const double ground = 1.0 - c * c * e;
  if (std::abs(c) < 1e-12 || ground < 1e-12) {
    std::ostringstream os;
    os << "SLD undefined at g tau = " << g * tau_c << " (rank-deficient state)";
    throw Error(ErrorCode::SingularSLD, os.str());
  }
  return Hermitian2::diag(-2.0 * tau_c * std::tan(g * tau_c), tau_c * std::sin(2.0 * g * tau_c) * e / ground);
}

Hermitian2 resonant_state_derivative(double g, double tau_c, double gamma_tau_f) {
  const double dp = -tau_c * std::sin(2.0 * g * tau_c) * std::exp(-gamma_tau_f);
  return Hermitian2::diag(dp, -dp);
}

Hermitian2 state_derivative(const std::function<QubitState(double)>& rho, double g, double h) {
  auto central = [&](double step) {
    return (rho(g + step).matrix() - rho(g - step).matrix()) * (0.5 / step);
  };
  const Hermitian2 d1 = central(h);
  const Hermitian2 d2 = central(0.5 * h);
  return (d2 * 4.0 - d1) * (1.0 / 3.0);
}

Hermitian2 sld_from_derivative(const Hermitian2& rho, const Hermitian2& drho) {
  const Eigen2 eig = eigendecompose(rho);
  const Hermitian2 d = eig.to_eigenbasis(drho);
  const double p0 = eig.values[0];
  const double p1 = eig.values[1];
  auto entry = [](double num, double den) { return den < 1e-12 ? 0.0 : 2.0 * num / den; };
  Hermitian2 lt;
  lt.ee = entry(d.ee, 2.0 * p0);
  lt.gg = entry(d.gg, 2.0 * p1);
  lt.eg = p0 + p1 < 1e-12 ? cplx{} : 2.0 * d.eg / (p0 + p1);
  return eig.from_eigenbasis(lt);
}

BoundReport cr_bound_mmse(const MmseResult& r, double g, const Prior& prior, const Scenario& s,
                          const FieldState& field) {
  BoundReport rep;
  rep.g = g;
  const QubitState rho = detector_state(g, s, field);
  rep.mse = mse_of_estimator(r, g, rho);
  const double h = 1e-6 * prior.g0;
  const Hermitian2 drho = state_derivative([&](double x) { return detector_state(x, s, field); }, g, h);
  const Fisher f = fisher_of(rho.matrix(), drho);
  const Eigen2 le = eigendecompose(f.L);
  rep.sld_eigs = le.values;
  rep.fisher = f.fisher;
  rep.x_prime = trace_product(r.m_min, drho);
  rep.inconclusive = r.estimates[1] - r.estimates[0] <= kInconclusive * std::max(1.0, std::abs(prior.g0));
  fill_bounds(rep);
  return rep;
}

double cr_bound_mmse_closed(const Prior& prior, double tau_c, double gamma_tau_f, double g) {
  const Abc abc = closed_form_abc(prior, tau_c);
  const double e = std::exp(-gamma_tau_f);
  const double c = std::cos(g * tau_c);
  const double sn = std::sin(g * tau_c);
  const double diff = std::abs(prior.g0 - abc.b / abc.a);
  if (diff <= kInconclusive * std::max(1.0, prior.g0)) return 0.0;
  return (1.0 - c * c * e) * std::abs(std::sin(2.0 * g * tau_c)) / (4.0 * tau_c * sn * sn) * diff /
         (1.0 - abc.a * e);
}

double ml_generic_bound(const MlPovm& povm, double g) {
  if (ml_insensitive(povm)) return 0.0;
  const double e = std::exp(-povm.gamma_tau_f);
  const double c = std::cos(g * povm.tau_c);
  const double p = c * c * e;
  const double dp = -povm.tau_c * std::sin(2.0 * g * povm.tau_c) * e;
  if (dp == 0.0) return 0.0;
  const double moment = fz_first_moment(povm);
  return 2.0 * std::abs(moment) * p * (1.0 - p) / std::abs(dp);
}

BoundReport cr_bound_ml(const MlPovm& povm, double g) {
  BoundReport rep;
  rep.g = g;
  rep.mse = ml_mse(povm, g);
  const double e = std::exp(-povm.gamma_tau_f);
  const double c = std::cos(g * povm.tau_c);
  const double p = c * c * e;
  const Hermitian2 rho = Hermitian2::diag(p, 1.0 - p);
  const Hermitian2 drho = resonant_state_derivative(g, povm.tau_c, povm.gamma_tau_f);
  const Fisher f = fisher_of(rho, drho);
  rep.sld_eigs = eigendecompose(f.L).values;
  rep.fisher = f.fisher;
  // x' = integral of g~ Tr(d rho dPi) = 2 p' * integral of g~ fz.
  rep.inconclusive = ml_insensitive(povm);
  rep.x_prime = rep.inconclusive ? 0.0 : 2.0 * drho.ee * fz_first_moment(povm);
  fill_bounds(rep);
  if (!rep.inconclusive && povm.prior.kind == PriorKind::Gaussian) {
    const double sigma = povm.prior.sigma;
    const double t = povm.tau_c;
    const double sn = std::sin(g * t);
    rep.lower_bound = (1.0 - p) / (sn * sn) * std::abs(std::sin(2.0 * g * t)) * 2.0 *
                      std::sqrt(5.0 * std::numbers::pi) * sigma * sigma * std::exp(-2.0 * sigma * sigma * t * t) *
                      std::abs(povm.c * std::sin(2.0 * povm.prior.g0 * t));
  }
  return rep;
}

}  // namespace jcest
