#include "jcest/runner.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "jcest/bounds.hpp"
#include "jcest/error.hpp"
#include "jcest/ml.hpp"
#include "jcest/mmse.hpp"
#include "jcest/parallel.hpp"

namespace jcest {
namespace {

[[noreturn]] void unsupported(const std::string& msg) { throw Error(ErrorCode::UnsupportedCombination, msg); }

bool per_g(Quantity q) {
  return q == Quantity::MmseAvgEstimate || q == Quantity::MmseCrBound || q == Quantity::MlAvgEstimate ||
         q == Quantity::MlCrBound;
}

bool is_ml(Quantity q) { return q == Quantity::MlCost || q == Quantity::MlAvgEstimate || q == Quantity::MlCrBound; }

std::vector<std::string> columns_for(Quantity q) {
  switch (q) {
    case Quantity::MmseEigenvalues: return {"axis", "eig_lo", "eig_hi", "eig_excited", "eig_ground"};
    case Quantity::MmseCost:
    case Quantity::DissipativeCost: return {"axis", "eig_lo", "eig_hi", "c_min"};
    case Quantity::MmseAvgEstimate: return {"axis", "eig_lo", "eig_hi", "c_min", "avg_estimate"};
    case Quantity::MmseCrBound: return {"axis", "eig_lo", "eig_hi", "c_min", "cr_bound", "mse", "cr_bound_squared"};
    case Quantity::MlCost: return {"axis", "c_max", "cost_max", "cost_max_quadrature"};
    case Quantity::MlAvgEstimate: return {"axis", "c_max", "avg_estimate", "avg_estimate_closed"};
    case Quantity::MlCrBound: return {"axis", "c_max", "cr_bound", "mse", "cr_bound_squared", "cr_bound_generic"};
  }
  return {};
}

Scenario base_scenario(const SweepSpec& spec) {
  Scenario s = spec.model.scenario;
  if (spec.sweep.quantity == Quantity::DissipativeCost) s.model = CavityModel::Dissipative;
  return s;
}

// The scenario at one axis point; tau_c already resolved.
Scenario at_point(const SweepSpec& spec, const Scenario& base, double x) {
  Scenario s = base;
  const double g0 = spec.model.prior.g0;
  switch (spec.sweep.axis) {
    case Axis::TauC: s.tau_c = x / g0; break;
    case Axis::Delta: s.delta = x * g0; break;
    case Axis::GammaTauF: s.tau_f_gamma = x; break;
    case Axis::GOverG0: break;
  }
  return s;
}

std::vector<double> mmse_row(Quantity q, const MmseResult& r) {
  std::vector<double> row{r.estimates[0], r.estimates[1]};
  if (q == Quantity::MmseEigenvalues) {
    row.push_back(r.excited_estimate());
    row.push_back(r.ground_estimate());
  } else {
    row.push_back(r.c_min);
  }
  return row;
}

template <class Loop>
Table sweep_impl(const SweepSpec& spec, Loop loop) {
  validate_sweep(spec);
  const SweepAxis& ax = spec.sweep;
  const ModelConfig& m = spec.model;
  Scenario base = base_scenario(spec);
  if (ax.axis != Axis::TauC) base.tau_c = resolve_tau(m);
  const FieldState field = field_for(base);

  Table t;
  t.columns = columns_for(ax.quantity);
  const std::size_t n = static_cast<std::size_t>(ax.n_points);
  t.rows.assign(n, {});
  auto axis_value = [&](std::size_t i) {
    if (i + 1 == n) return ax.hi;
    return ax.lo + (ax.hi - ax.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  if (per_g(ax.quantity)) {
    const double g0 = m.prior.g0;
    if (is_ml(ax.quantity)) {
      const MlPovm povm = ml_povm(m.prior, base.tau_c, base.tau_f_gamma);
      loop(n, [&](std::size_t i) {
        const double x = axis_value(i);
        const double g = x * g0;
        if (ax.quantity == Quantity::MlAvgEstimate) {
          t.rows[i] = {x, povm.c, ml_average_estimate(povm, g), ml_average_estimate_closed(povm, g)};
        } else {
          const BoundReport b = cr_bound_ml(povm, g);
          t.rows[i] = {x, povm.c, b.lower_bound, b.mse, b.squared_bound, ml_generic_bound(povm, g)};
        }
      });
    } else {
      const MmseResult r = solve_mmse(m.prior, base, field, m.quad_points);
      loop(n, [&](std::size_t i) {
        const double x = axis_value(i);
        const double g = x * g0;
        std::vector<double> row{x, r.estimates[0], r.estimates[1], r.c_min};
        if (ax.quantity == Quantity::MmseAvgEstimate) {
          row.push_back(average_estimate(r, g, base, field));
        } else {
          const BoundReport b = cr_bound_mmse(r, g, m.prior, base, field);
          row.insert(row.end(), {b.lower_bound, b.mse, b.squared_bound});
        }
        t.rows[i] = std::move(row);
      });
    }
    return t;
  }

  loop(n, [&](std::size_t i) {
    const double x = axis_value(i);
    const Scenario s = at_point(spec, base, x);
    std::vector<double> row{x};
    if (ax.quantity == Quantity::MlCost) {
      const MlPovm povm = ml_povm(m.prior, s.tau_c, s.tau_f_gamma);
      row.insert(row.end(), {povm.c, cost_max(povm), cost_max_quadrature(povm)});
    } else {
      const MmseResult r = solve_mmse(m.prior, s, field, m.quad_points);
      const std::vector<double> rest = mmse_row(ax.quantity, r);
      row.insert(row.end(), rest.begin(), rest.end());
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

auto parallel_loop = [](std::size_t n, const auto& body) { parallel_for(n, body); };
auto serial_loop = [](std::size_t n, const auto& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
};

double cost_at(const Prior& prior, Scenario s, const FieldState& field, int quad_points, double g0_tau) {
  s.tau_c = g0_tau / prior.g0;
  try {
    return solve_mmse(prior, s, field, quad_points).c_min;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateGamma0) return std::numeric_limits<double>::infinity();
    throw;
  }
}

}  // namespace

void validate_sweep(const SweepSpec& spec) {
  const SweepAxis& ax = spec.sweep;
  const Quantity q = ax.quantity;
  const std::string name(to_string(q));
  if (ax.n_points < 2 || !(ax.lo < ax.hi)) unsupported("sweep range needs lo < hi and n >= 2");
  if (per_g(q) != (ax.axis == Axis::GOverG0)) {
    unsupported(name + (per_g(q) ? " is evaluated per true coupling; use axis = g_over_g0"
                                 : " does not depend on the true coupling; g_over_g0 is not a valid axis"));
  }
  if (ax.axis == Axis::TauC && ax.lo <= 0.0) unsupported("tau_c axis must stay positive");
  if (ax.axis == Axis::GammaTauF && ax.lo < 0.0) unsupported("gamma_tau_f axis must be non-negative");
  const Scenario& s = spec.model.scenario;
  if (is_ml(q)) {
    if (!s.resonant_vacuum() || ax.axis == Axis::Delta) unsupported(name + " requires delta = 0 and alpha = 0");
    if (s.model != CavityModel::Unitary) unsupported(name + " requires the unitary model");
    if (ax.axis == Axis::Delta) unsupported(name + " cannot sweep delta");
  }
  if (q == Quantity::DissipativeCost) {
    if (!s.resonant_vacuum() || ax.axis == Axis::Delta) {
      unsupported("dissipative_cost requires delta = 0 and alpha = 0");
    }
  }
  Scenario check = base_scenario(spec);
  if (check.tau_c <= 0.0) check.tau_c = 1.0;
  check.validate();
}

Table run_sweep(const SweepSpec& spec) { return sweep_impl(spec, parallel_loop); }
Table run_sweep_serial(const SweepSpec& spec) { return sweep_impl(spec, serial_loop); }

double find_tau_star(const Prior& prior, const Scenario& s, const FieldState& field, int quad_points) {
  constexpr int kScan = 300;
  constexpr double kLo = 0.05;
  constexpr double kHi = 3.0;
  const double step = (kHi - kLo) / (kScan - 1);
  std::vector<double> cost(kScan);
  parallel_for(kScan, [&](std::size_t i) {
    cost[i] = cost_at(prior, s, field, quad_points, kLo + step * static_cast<double>(i));
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < cost.size(); ++i) {
    if (cost[i] < cost[best]) best = i;
  }
  double a = kLo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = kLo + step * static_cast<double>(std::min<std::size_t>(best + 1, kScan - 1));

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = cost_at(prior, s, field, quad_points, x1);
  double f2 = cost_at(prior, s, field, quad_points, x2);
  while (b - a > 1e-5) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = cost_at(prior, s, field, quad_points, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = cost_at(prior, s, field, quad_points, x2);
    }
  }
  double g0_tau = 0.5 * (a + b);
  // An edge minimum is reported at the scan point itself.
  if (cost[best] < cost_at(prior, s, field, quad_points, g0_tau)) g0_tau = kLo + step * static_cast<double>(best);
  return g0_tau / prior.g0;
}

double resolve_tau(const ModelConfig& m) {
  if (!m.tau_star) return m.scenario.tau_c;
  return find_tau_star(m.prior, m.scenario, field_for(m.scenario), m.quad_points);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
    os << '\n';
  }
}

nlohmann::json table_to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      // JSON has no inf/nan; those become null.
      if (std::isfinite(row[j])) {
        obj[t.columns[j]] = row[j];
      } else {
        obj[t.columns[j]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

nlohmann::json config_to_json(const ModelConfig& m, const std::optional<SweepAxis>& sweep) {
  const double g0 = m.prior.g0;
  const Scenario& s = m.scenario;
  nlohmann::json j;
  j["prior"] = {{"kind", m.prior.kind == PriorKind::Gaussian ? "gaussian" : "uniform"},
                {"g0", g0},
                {"sigma", m.prior.sigma / g0}};
  nlohmann::json sc;
  if (m.tau_star) {
    sc["tau_c"] = "star";
  } else {
    sc["tau_c"] = s.tau_c * g0;
  }
  sc["gamma_tau_f"] = s.tau_f_gamma;
  sc["delta"] = s.delta / g0;
  sc["alpha"] = std::abs(s.alpha);
  sc["alpha_phase"] = std::arg(s.alpha);
  sc["kappa"] = s.kappa / g0;
  sc["gamma"] = s.gamma_cav / g0;
  sc["model"] = s.model == CavityModel::Unitary ? "unitary" : "dissipative";
  if (s.fock_cutoff) {
    sc["fock_cutoff"] = *s.fock_cutoff;
  } else {
    sc["fock_cutoff"] = "auto";
  }
  sc["g"] = m.g_over_g0;
  sc["quad_points"] = m.quad_points;
  j["scenario"] = sc;
  if (sweep) {
    j["sweep"] = {{"quantity", std::string(to_string(sweep->quantity))},
                  {"axis", std::string(to_string(sweep->axis))},
                  {"lo", sweep->lo},
                  {"hi", sweep->hi},
                  {"n", sweep->n_points}};
  }
  return j;
}

}  // namespace jcest
