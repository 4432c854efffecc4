#include "jcest/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <set>
#include <utility>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "jcest/error.hpp"

namespace jcest {
namespace {

namespace pt = boost::property_tree;

constexpr std::array<std::pair<Quantity, std::string_view>, 8> kQuantities{{
    {Quantity::MmseEigenvalues, "mmse_eigenvalues"},
    {Quantity::MmseCost, "mmse_cost"},
    {Quantity::MmseAvgEstimate, "mmse_avg_estimate"},
    {Quantity::MmseCrBound, "mmse_cr_bound"},
    {Quantity::MlCost, "ml_cost"},
    {Quantity::MlAvgEstimate, "ml_avg_estimate"},
    {Quantity::MlCrBound, "ml_cr_bound"},
    {Quantity::DissipativeCost, "dissipative_cost"},
}};

constexpr std::array<std::pair<Axis, std::string_view>, 4> kAxes{{
    {Axis::TauC, "tau_c"},
    {Axis::GOverG0, "g_over_g0"},
    {Axis::Delta, "delta"},
    {Axis::GammaTauF, "gamma_tau_f"},
}};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) fail("'" + key + "' is not a number: '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) fail("'" + key + "' is not an integer: '" + text + "'");
  return v;
}

// Section accessor that remembers which keys were read, so leftovers can be
// reported as typos.
class Section {
 public:
  Section(const pt::ptree& root, const std::string& name) : name_(name) {
    if (auto child = root.get_child_optional(name)) tree_ = *child;
  }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    if (auto v = tree_.get_optional<std::string>(key)) return *v;
    return std::nullopt;
  }
  double number(const std::string& key, double fallback) {
    auto t = text(key);
    return t ? to_double(name_ + "." + key, *t) : fallback;
  }
  bool empty() const { return tree_.empty(); }

  void reject_unknown() const {
    for (const auto& [key, child] : tree_) {
      if (!used_.count(key)) fail("unknown key '" + key + "' in [" + name_ + "]");
    }
  }

 private:
  std::string name_;
  pt::ptree tree_;
  std::set<std::string> used_;
};

}  // namespace

std::string_view to_string(Quantity q) {
  for (const auto& [k, s] : kQuantities) {
    if (k == q) return s;
  }
  return "unknown";
}

std::string_view to_string(Axis a) {
  for (const auto& [k, s] : kAxes) {
    if (k == a) return s;
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view s) {
  for (const auto& [k, name] : kQuantities) {
    if (name == s) return k;
  }
  fail("unknown sweep quantity '" + std::string(s) + "'");
}

Axis parse_axis(std::string_view s) {
  for (const auto& [k, name] : kAxes) {
    if (name == s) return k;
  }
  fail("unknown sweep axis '" + std::string(s) + "'");
}

RunConfig parse_config(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    fail(e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [name, child] : root) {
    if (name != "prior" && name != "scenario" && name != "sweep") fail("unknown section [" + name + "]");
  }

  RunConfig cfg;
  ModelConfig& m = cfg.model;

  Section prior(root, "prior");
  const std::string kind = prior.text("kind").value_or("gaussian");
  const double g0 = prior.number("g0", 1.0);
  const double sigma = prior.number("sigma", 1.0);
  if (!(g0 > 0.0) || !std::isfinite(g0)) fail("prior.g0 must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("prior.sigma must be positive");
  if (kind == "gaussian") {
    m.prior = Prior::gaussian(g0, sigma * g0);
  } else if (kind == "uniform") {
    m.prior = Prior::uniform(g0, sigma * g0);
  } else {
    fail("prior.kind must be gaussian or uniform, got '" + kind + "'");
  }
  prior.reject_unknown();

  Section sc(root, "scenario");
  Scenario& s = m.scenario;
  const std::string tau = sc.text("tau_c").value_or("star");
  if (tau == "star") {
    m.tau_star = true;
    s.tau_c = 0.0;
  } else {
    s.tau_c = to_double("scenario.tau_c", tau) / g0;
    if (!(s.tau_c > 0.0)) fail("scenario.tau_c must be positive");
  }
  s.tau_f_gamma = sc.number("gamma_tau_f", 0.0);
  s.delta = sc.number("delta", 0.0) * g0;
  const double amp = sc.number("alpha", 0.0);
  const double phase = sc.number("alpha_phase", 0.0);
  s.alpha = std::polar(amp, phase);
  s.kappa = sc.number("kappa", 0.0) * g0;
  s.gamma_cav = sc.number("gamma", 0.0) * g0;
  const std::string model = sc.text("model").value_or("unitary");
  if (model == "unitary") {
    s.model = CavityModel::Unitary;
  } else if (model == "dissipative") {
    s.model = CavityModel::Dissipative;
  } else {
    fail("scenario.model must be unitary or dissipative, got '" + model + "'");
  }
  if (auto cut = sc.text("fock_cutoff"); cut && *cut != "auto") {
    s.fock_cutoff = to_int("scenario.fock_cutoff", *cut);
    if (*s.fock_cutoff < 0) fail("scenario.fock_cutoff must be >= 0");
  }
  m.g_over_g0 = sc.number("g", 1.0);
  if (auto q = sc.text("quad_points")) {
    m.quad_points = to_int("scenario.quad_points", *q);
    if (m.quad_points < 64) fail("scenario.quad_points must be >= 64");
  }
  if (s.tau_f_gamma < 0.0 || s.kappa < 0.0 || s.gamma_cav < 0.0) fail("rates must be non-negative");
  sc.reject_unknown();

  Section sw(root, "sweep");
  if (!sw.empty()) {
    SweepAxis ax;
    auto required = [&](const std::string& key) {
      auto v = sw.text(key);
      if (!v) fail("[sweep] needs '" + key + "'");
      return *v;
    };
    ax.quantity = parse_quantity(required("quantity"));
    ax.axis = parse_axis(required("axis"));
    ax.lo = to_double("sweep.lo", required("lo"));
    ax.hi = to_double("sweep.hi", required("hi"));
    ax.n_points = to_int("sweep.n", required("n"));
    if (!(ax.lo < ax.hi)) fail("sweep.lo must be below sweep.hi");
    if (ax.n_points < 2) fail("sweep.n must be at least 2");
    sw.reject_unknown();
    cfg.sweep = ax;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace jcest
