#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "jcest/config.hpp"
#include "jcest/error.hpp"
#include "jcest/mmse.hpp"
#include "jcest/runner.hpp"

using namespace jcest;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Config, ParsesUnitsOfG0) {
  const RunConfig c = parse(
      "[prior]\nkind = uniform\ng0 = 2\nsigma = 0.5\n"
      "[scenario]\ntau_c = 0.6\ndelta = 0.25\nkappa = 0.1\nalpha = 1.5\nfock_cutoff = 20\ng = 1.1\n");
  EXPECT_EQ(c.model.prior.kind, PriorKind::Uniform);
  EXPECT_DOUBLE_EQ(c.model.prior.sigma, 1.0);
  EXPECT_DOUBLE_EQ(c.model.scenario.tau_c, 0.3);
  EXPECT_DOUBLE_EQ(c.model.scenario.delta, 0.5);
  EXPECT_DOUBLE_EQ(c.model.scenario.kappa, 0.2);
  EXPECT_EQ(c.model.scenario.alpha, cplx(1.5, 0.0));
  EXPECT_EQ(*c.model.scenario.fock_cutoff, 20);
  EXPECT_DOUBLE_EQ(c.model.g_over_g0, 1.1);
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(Config, StarAndSweep) {
  const RunConfig c = parse("[scenario]\ntau_c = star\n[sweep]\nquantity = mmse_cost\naxis = delta\nlo = -3\nhi = 3\nn = 21\n");
  EXPECT_TRUE(c.model.tau_star);
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->axis, Axis::Delta);
  EXPECT_EQ(c.sweep->n_points, 21);
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of([] { parse("[prior]\nsigma = abc\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse("[prior]\nsigmaa = 1\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse("[extra]\nx = 1\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse("[sweep]\nquantity = nope\naxis = tau_c\nlo = 0\nhi = 1\nn = 3\n"); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse("[sweep]\nquantity = mmse_cost\naxis = tau_c\nlo = 1\nhi = 1\nn = 3\n"); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { load_config("/nonexistent/file.ini"); }), ErrorCode::ConfigError);
}

TEST(Runner, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_number(-2.5), "-2.5000000000000000e+00");
  EXPECT_EQ(format_number(0.0), "0.0000000000000000e+00");
}

TEST(Runner, CsvShape) {
  Table t{{"axis", "v"}, {{1.0, 2.0}, {3.0, 0.25}}};
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(),
            "axis,v\n1.0000000000000000e+00,2.0000000000000000e+00\n"
            "3.0000000000000000e+00,2.5000000000000000e-01\n");
}

TEST(Runner, CostVersusTauHasInteriorMinimum) {
  SweepSpec spec;
  spec.sweep = {Quantity::MmseCost, Axis::TauC, 0.01, 3.0, 300};
  spec.model.prior = Prior::uniform(1.0, 1.0);
  const Table t = run_sweep(spec);
  ASSERT_EQ(t.rows.size(), 300u);
  EXPECT_EQ(t.columns.back(), "c_min");
  EXPECT_NEAR(t.rows.front()[3], 1.0, 1e-3);
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i][3] < t.rows[best][3]) best = i;
  }
  EXPECT_GT(best, 0u);
  EXPECT_LT(best, 299u);
  EXPECT_GE(t.rows[best][0], 0.6);
  EXPECT_LE(t.rows[best][0], 0.7);
}

TEST(Runner, DetuningMinimumAtResonance) {
  SweepSpec spec;
  spec.sweep = {Quantity::MmseCost, Axis::Delta, -3.0, 3.0, 21};
  spec.model.scenario.tau_c = 0.65;
  const Table t = run_sweep(spec);
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i][3] < t.rows[best][3]) best = i;
  }
  EXPECT_EQ(best, 10u);
}

TEST(Runner, ParallelEqualsSerialAndRerunsAreIdentical) {
  SweepSpec spec;
  spec.sweep = {Quantity::MmseCrBound, Axis::GOverG0, 0.2, 1.8, 17};
  spec.model.scenario.tau_c = 0.7;
  spec.model.scenario.delta = 0.2;
  const Table a = run_sweep(spec), b = run_sweep_serial(spec), c = run_sweep(spec);
  std::ostringstream sa, sb, sc;
  write_csv(sa, a);
  write_csv(sb, b);
  write_csv(sc, c);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str(), sc.str());
}

TEST(Runner, DissipationFreeLimitMatchesUnitary) {
  SweepSpec u;
  u.sweep = {Quantity::MmseCost, Axis::TauC, 0.05, 3.0, 40};
  SweepSpec d = u;
  d.sweep.quantity = Quantity::DissipativeCost;
  const Table tu = run_sweep(u), td = run_sweep(d);
  for (std::size_t i = 0; i < tu.rows.size(); ++i) {
    for (std::size_t j = 0; j < tu.rows[i].size(); ++j) EXPECT_NEAR(tu.rows[i][j], td.rows[i][j], 1e-9);
  }
}

TEST(Runner, UnsupportedCombinations) {
  SweepSpec spec;
  spec.sweep = {Quantity::MlCost, Axis::TauC, 0.1, 2.0, 5};
  spec.model.scenario.alpha = {1.0, 0.0};
  EXPECT_EQ(code_of([&] { run_sweep(spec); }), ErrorCode::UnsupportedCombination);
  spec.model.scenario.alpha = {};
  spec.sweep.axis = Axis::GOverG0;
  EXPECT_EQ(code_of([&] { run_sweep(spec); }), ErrorCode::UnsupportedCombination);
  spec.sweep = {Quantity::MmseCrBound, Axis::TauC, 0.1, 2.0, 5};
  EXPECT_EQ(code_of([&] { run_sweep(spec); }), ErrorCode::UnsupportedCombination);
}

TEST(Runner, TauStarBeatsEndpoints) {
  const Prior p = Prior::gaussian(1.0, 1.0);
  Scenario s;
  const FieldState f = FieldState::vacuum();
  const double t = find_tau_star(p, s, f);
  s.tau_c = t;
  const double at_star = solve_mmse(p, s, f).c_min;
  s.tau_c = 0.01;
  EXPECT_LT(at_star, solve_mmse(p, s, f).c_min);
  EXPECT_LT(at_star, 1.0);
  // golden-section result is a local minimum to the 1e-4 tolerance
  for (double d : {-1e-3, 1e-3}) {
    s.tau_c = t + d;
    EXPECT_GE(solve_mmse(p, s, f).c_min, at_star);
  }
}

TEST(Runner, JsonNestsConfig) {
  ModelConfig m;
  m.tau_star = true;
  const nlohmann::json j = config_to_json(m, SweepAxis{Quantity::MlCost, Axis::TauC, 0.1, 2.0, 5});
  EXPECT_EQ(j["scenario"]["tau_c"], "star");
  EXPECT_EQ(j["sweep"]["quantity"], "ml_cost");
  const nlohmann::json t = table_to_json({{"axis", "x"}, {{1.0, INFINITY}}});
  EXPECT_TRUE(t["rows"][0]["x"].is_null());
}
