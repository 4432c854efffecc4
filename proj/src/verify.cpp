#include "jcest/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "jcest/bounds.hpp"
#include "jcest/error.hpp"
#include "jcest/jc_dynamics.hpp"
#include "jcest/ml.hpp"
#include "jcest/mmse.hpp"
#include "jcest/oracle.hpp"
#include "jcest/runner.hpp"

namespace jcest {
namespace {

constexpr double kPi = std::numbers::pi;

double gamma_diff(const GammaTriple& a, const GammaTriple& b) {
  return std::max({max_abs_diff(a.gamma0, b.gamma0), max_abs_diff(a.gamma1, b.gamma1),
                   max_abs_diff(a.gamma2, b.gamma2)});
}

Scenario resonant(double tau, double gtf = 0.0) {
  Scenario s;
  s.tau_c = tau;
  s.tau_f_gamma = gtf;
  return s;
}

class Suite {
 public:
  explicit Suite(VerifyReport& r) : report_(r) {}

  // Runs `f`, recording a failed check (with the error text) if it throws.
  void run(const std::string& name, double threshold, const std::function<double()>& f,
           const std::string& detail = {}) {
    Check c{name, false, 0.0, threshold, detail};
    try {
      c.value = f();
      c.passed = std::isfinite(c.value) && c.value <= threshold;
    } catch (const std::exception& e) {
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.detail = e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& report_;
};

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Check& c : checks) {
    nlohmann::json j{{"name", c.name}, {"passed", c.passed}, {"threshold", c.threshold}};
    if (std::isfinite(c.value)) {
      j["value"] = c.value;
    } else {
      j["value"] = nullptr;
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return {{"seed", seed}, {"passed", ok()}, {"checks", arr}};
}

VerifyReport verify_all(std::uint64_t seed, double cmax_scale) {
  VerifyReport report;
  report.seed = seed;
  Suite suite(report);

  const Prior gauss = Prior::gaussian(1.0, 1.0);
  const Prior unif = Prior::uniform(1.0, 1.0);
  const FieldState vac = FieldState::vacuum();
  const double g0 = 1.0;

  // --- closed forms against the quadrature path
  suite.run("mmse.half_period.closed_cost", 1e-12, [&] {
    return std::abs(mmse_closed_form(gauss, kPi / (2 * g0), 0.0).c_min - gauss.sigma * gauss.sigma);
  });
  suite.run("mmse.half_period.quadrature_cost", 1e-8, [&] {
    return std::abs(solve_mmse(gauss, resonant(kPi / (2 * g0)), vac).c_min - gauss.sigma * gauss.sigma);
  });
  for (const Prior& p : {gauss, unif}) {
    const std::string tag = p.kind == PriorKind::Gaussian ? "gaussian" : "uniform";
    suite.run("mmse.quarter_period.closed_vs_quadrature." + tag, 1e-8, [&] {
      const MmseResult a = mmse_closed_form(p, kPi / (4 * g0), 0.0);
      const MmseResult b = solve_mmse(p, resonant(kPi / (4 * g0)), vac);
      return std::max({std::abs(a.c_min - b.c_min), std::abs(a.estimates[0] - b.estimates[0]),
                       std::abs(a.estimates[1] - b.estimates[1])});
    });
    suite.run("gamma.brute_force." + tag, 1e-6, [&] {
      const Scenario s = resonant(0.7);
      return gamma_diff(brute_force_gamma(p, s, vac, 20000), gamma_moments(p, s, vac));
    });
    suite.run("mmse.tau0_limit." + tag, 1e-3, [&] {
      const MmseResult r = solve_mmse(p, resonant(1e-5 / g0), vac);
      return std::abs(r.ground_estimate() - limit_eigenvalue_tau0(p));
    });
  }

  suite.run("gamma.parallel_vs_serial", 0.0, [&] {
    Scenario s = resonant(1.3);
    s.delta = 0.4;
    s.alpha = {1.0, 0.5};
    const FieldState f = field_for(s);
    return gamma_diff(gamma_moments(gauss, s, f), gamma_moments_serial(gauss, s, f));
  });

  suite.run("mmse.operator_equation_residual", 1e-12, [&] {
    Scenario s = resonant(0.9);
    s.delta = -0.7;
    s.alpha = {0.8, -0.3};
    const GammaTriple gm = gamma_moments(unif, s, field_for(s));
    const MmseResult r = mmse_estimator(gm);
    const Hermitian2 lhs = anticommutator(gm.gamma0, r.m_min);
    return max_abs_diff(lhs, gm.gamma1 * 2.0);
  });

  // --- dissipation-free limit
  suite.run("dynamics.dissipative_limit", 1e-10, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 10.0 * i / 1000.0;
      const double c = std::cos(t);
      worst = std::max(worst, std::abs(dissipative_population(1.0, t, 0.0, 0.0) - c * c));
    }
    return worst;
  });

  // --- ML strategy
  suite.run("ml.uniform_special.c_max", 1e-6, [&] {
    const double tau = kPi / (4 * g0);
    const Prior p = Prior::uniform(g0, g0 / std::sqrt(3.0));
    return std::abs(uniform_cmax(p, tau) - 2 * tau / kPi);
  });
  for (const Prior& p : {gauss, unif}) {
    const std::string tag = p.kind == PriorKind::Gaussian ? "gaussian" : "uniform";
    const MlPovm povm = ml_povm(p, kPi / (4 * g0) * (p.kind == PriorKind::Gaussian ? 1.0 : 0.9), 0.0);
    suite.run("ml.cost.closed_vs_quadrature." + tag, 1e-8,
              [&] { return std::abs(cost_max(povm) - cost_max_quadrature(povm)); });
    suite.run("ml.completeness." + tag, 1e-9, [&] {
      const double fi = integrate_support(povm, [&](double x) { return povm.fI(x); });
      const double fz = integrate_support(povm, [&](double x) { return povm.fz(x); });
      return std::max(std::abs(fi - 1.0), std::abs(fz));
    });
    suite.run(
        "ml.positivity_audit." + tag, 0.0,
        [&] { return static_cast<double>(audit_positivity(povm.scaled(cmax_scale), 10000, seed).violations); },
        cmax_scale == 1.0 ? "" : "normalization scaled by " + format_number(cmax_scale));
  }

  // --- Monte Carlo
  const std::int64_t n_mc = 100000;
  for (double g0tau : {kPi / 2, kPi / 4, 0.65}) {
    suite.run("mc.quadratic_cost.gaussian.g0tau=" + format_number(g0tau), 4.0, [&] {
      const Scenario s = resonant(g0tau / g0);
      const MmseResult r = solve_mmse(gauss, s, vac);
      return mc_quadratic_cost(r, gauss, s, vac, n_mc, seed).z_score;
    });
  }
  suite.run("mc.quadratic_cost.uniform_coherent", 4.0, [&] {
    Scenario s = resonant(0.6);
    s.alpha = {1.0, 0.0};
    const FieldState f = field_for(s);
    const MmseResult r = solve_mmse(unif, s, f);
    return mc_quadratic_cost(r, unif, s, f, n_mc, seed).z_score;
  });
  suite.run("mc.quadratic_cost.deterministic", 0.0, [&] {
    const Scenario s = resonant(0.65);
    const MmseResult r = solve_mmse(gauss, s, vac);
    const McReport a = mc_quadratic_cost(r, gauss, s, vac, n_mc, seed);
    const McReport b = mc_quadratic_cost_serial(r, gauss, s, vac, n_mc, seed);
    return std::abs(a.empirical_cost - b.empirical_cost) + std::abs(a.standard_error - b.standard_error);
  });
  suite.run("mc.ml_mean.gaussian", 4.0, [&] {
    const MlPovm povm = gaussian_ml_povm(gauss, kPi / (4 * g0), 0.0);
    return mc_estimate_distribution(povm, 0.8 * g0, n_mc, seed).z_score;
  });
  suite.run("mc.ml_mean.uniform_special", 4.0, [&] {
    const MlPovm povm = uniform_ml_povm(Prior::uniform(g0, g0 / std::sqrt(3.0)), kPi / (4 * g0), 0.0);
    const EstimateDistribution d = mc_estimate_distribution(povm, g0, n_mc, seed);
    return std::abs(d.mean - g0) / d.standard_error;
  });

  // --- bounds: SLD identity and the squared-numerator inequality
  suite.run("bounds.sld_identity", 1e-9, [&] {
    double worst = 0.0;
    const double tau = kPi / (4 * g0);
    for (int i = 0; i < 50; ++i) {
      const double g = (0.2 + 1.6 * i / 49.0) * g0;
      const double c = std::cos(g * tau);
      const Hermitian2 rho = Hermitian2::diag(c * c, 1 - c * c);
      const Hermitian2 L = sld(g, tau, 0.0);
      const Hermitian2 lhs = anticommutator(L, rho) * 0.5;
      worst = std::max(worst, max_abs_diff(lhs, resonant_state_derivative(g, tau, 0.0)));
    }
    return worst;
  });
  for (const Prior& p : {gauss, unif}) {
    const std::string tag = p.kind == PriorKind::Gaussian ? "gaussian" : "uniform";
    suite.run("bounds.squared_cr.mmse." + tag, 1e-9, [&] {
      double worst = -1.0;
      for (double g0tau : {0.3, 0.65, kPi / 4, 1.2}) {
        const Scenario s = resonant(g0tau / g0);
        const MmseResult r = solve_mmse(p, s, vac);
        for (int i = 0; i < 50; ++i) {
          const double g = (0.2 + 1.6 * i / 49.0) * g0;
          const BoundReport b = cr_bound_mmse(r, g, p, s, vac);
          worst = std::max(worst, b.squared_bound - b.mse);
        }
      }
      return worst;
    });
    suite.run("bounds.squared_cr.ml." + tag, 1e-9, [&] {
      double worst = -1.0;
      const MlPovm povm = ml_povm(p, kPi / (4 * g0), 0.0);
      for (int i = 0; i < 50; ++i) {
        const BoundReport b = cr_bound_ml(povm, (0.2 + 1.6 * i / 49.0) * g0);
        worst = std::max(worst, b.squared_bound - b.mse);
      }
      return worst;
    });
  }
  return report;
}

}  // namespace jcest
