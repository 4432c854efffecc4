// jcest — command-line front end.
//
//   jcest state    --config run.ini            rho(g) at the configured g
//   jcest mmse     --config run.ini            optimal quadratic-cost estimator
//   jcest ml       --config run.ini            maximum-likelihood POVM and its cost
//   jcest sweep    --config run.ini            table over the [sweep] axis
//   jcest tau-star --config run.ini            recommended interaction time
//   jcest verify   [--seed N]                  oracle suite; exit 2 on any failure
//
// Exit codes: 0 ok, 1 config error, 2 verification failure, 3 numeric error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jcest/config.hpp"
#include "jcest/error.hpp"
#include "jcest/ml.hpp"
#include "jcest/mmse.hpp"
#include "jcest/parallel.hpp"
#include "jcest/runner.hpp"
#include "jcest/verify.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kVerify = 2, kNumeric = 3 };

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20240611;
  int threads = 0;
  double cmax_scale = 1.0;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw jcest::Error(jcest::ErrorCode::ConfigError, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

jcest::RunConfig require_config(const Options& o) {
  if (o.config.empty()) throw jcest::Error(jcest::ErrorCode::ConfigError, "--config is required");
  return jcest::load_config(o.config);
}

void emit(const Options& o, const jcest::Table& t, const jcest::RunConfig& cfg, const char* command) {
  Output out(o.out);
  if (o.format == "json") {
    nlohmann::json j{{"command", command}, {"config", jcest::config_to_json(cfg.model, cfg.sweep)}};
    j["result"] = jcest::table_to_json(t);
    out.stream() << j.dump(2) << '\n';
  } else {
    jcest::write_csv(out.stream(), t);
  }
}

jcest::Scenario resolved(const jcest::ModelConfig& m) {
  jcest::Scenario s = m.scenario;
  s.tau_c = jcest::resolve_tau(m);
  s.validate();
  return s;
}

int cmd_state(const Options& o) {
  const auto cfg = require_config(o);
  const jcest::Scenario s = resolved(cfg.model);
  const double g = cfg.model.g_over_g0 * cfg.model.prior.g0;
  const auto rho = jcest::detector_state(g, s, jcest::field_for(s)).matrix();
  emit(o, {{"g_over_g0", "g0_tau_c", "rho_ee", "rho_gg", "rho_eg_re", "rho_eg_im"},
           {{cfg.model.g_over_g0, s.tau_c * cfg.model.prior.g0, rho.ee, rho.gg, rho.eg.real(), rho.eg.imag()}}},
       cfg, "state");
  return kOk;
}

int cmd_mmse(const Options& o) {
  const auto cfg = require_config(o);
  const jcest::Scenario s = resolved(cfg.model);
  const auto r = jcest::solve_mmse(cfg.model.prior, s, jcest::field_for(s), cfg.model.quad_points);
  emit(o,
       {{"g0_tau_c", "eig_lo", "eig_hi", "eig_excited", "eig_ground", "c_min", "m_ee", "m_gg", "m_eg_re", "m_eg_im"},
        {{s.tau_c * cfg.model.prior.g0, r.estimates[0], r.estimates[1], r.excited_estimate(), r.ground_estimate(),
          r.c_min, r.m_min.ee, r.m_min.gg, r.m_min.eg.real(), r.m_min.eg.imag()}}},
       cfg, "mmse");
  return kOk;
}

int cmd_ml(const Options& o) {
  const auto cfg = require_config(o);
  const jcest::Scenario s = resolved(cfg.model);
  if (!s.resonant_vacuum() || s.model != jcest::CavityModel::Unitary) {
    throw jcest::Error(jcest::ErrorCode::UnsupportedCombination,
                       "the ML strategy requires delta = 0, alpha = 0 and the unitary model");
  }
  const auto povm = jcest::ml_povm(cfg.model.prior, s.tau_c, s.tau_f_gamma);
  emit(o,
       {{"g0_tau_c", "c_max", "cost_max", "cost_max_quadrature"},
        {{s.tau_c * cfg.model.prior.g0, povm.c, jcest::cost_max(povm), jcest::cost_max_quadrature(povm)}}},
       cfg, "ml");
  return kOk;
}

int cmd_sweep(const Options& o) {
  const auto cfg = require_config(o);
  if (!cfg.sweep) throw jcest::Error(jcest::ErrorCode::ConfigError, "sweep needs a [sweep] section");
  const jcest::Table t = jcest::run_sweep({*cfg.sweep, cfg.model});
  emit(o, t, cfg, "sweep");
  return kOk;
}

int cmd_tau_star(const Options& o) {
  auto cfg = require_config(o);
  cfg.model.tau_star = true;
  const jcest::Scenario s = resolved(cfg.model);
  const auto r = jcest::solve_mmse(cfg.model.prior, s, jcest::field_for(s), cfg.model.quad_points);
  emit(o, {{"g0_tau_star", "c_min"}, {{s.tau_c * cfg.model.prior.g0, r.c_min}}}, cfg, "tau-star");
  return kOk;
}

int cmd_verify(const Options& o) {
  const jcest::VerifyReport rep = jcest::verify_all(o.seed, o.cmax_scale);
  Output out(o.out);
  if (o.format == "json") {
    out.stream() << rep.to_json().dump(2) << '\n';
  } else {
    out.stream() << "name,passed,value,threshold\n";
    for (const auto& c : rep.checks) {
      out.stream() << c.name << ',' << (c.passed ? 1 : 0) << ',' << jcest::format_number(c.value) << ','
                   << jcest::format_number(c.threshold) << '\n';
    }
  }
  for (const auto& c : rep.checks) {
    if (!c.passed) std::cerr << "FAILED " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
  }
  return rep.ok() ? kOk : kVerify;
}

int exit_code_for(jcest::ErrorCode code) {
  switch (code) {
    case jcest::ErrorCode::ConfigError:
    case jcest::ErrorCode::InvalidArgument:
    case jcest::ErrorCode::InvalidRate:
    case jcest::ErrorCode::UnsupportedCombination: return kConfig;
    default: return kNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian estimation of the Jaynes-Cummings coupling from a transiting two-level system"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", o.config, "INI configuration file");
    if (needs_config) opt->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", o.seed, "64-bit seed for Monte-Carlo checks");
    sub->add_option("--threads", o.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  };

  std::function<int(const Options&)> action;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&), bool needs_config) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, needs_config);
    s->callback([&action, fn] { action = fn; });
    return s;
  };
  sub("state", "print rho(g) at the detector", cmd_state, true);
  sub("mmse", "optimal quadratic-cost estimator", cmd_mmse, true);
  sub("ml", "maximum-likelihood POVM and its average cost", cmd_ml, true);
  sub("sweep", "evaluate a quantity along the [sweep] axis", cmd_sweep, true);
  sub("tau-star", "interaction time minimising the quadratic cost", cmd_tau_star, true);
  CLI::App* verify = sub("verify", "run the oracle and invariant suite", cmd_verify, false);
  verify->add_option("--inject-cmax-scale", o.cmax_scale, "scale ML normalizations before auditing (smoke test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    jcest::set_threads(o.threads);
    return action(o);
  } catch (const jcest::Error& e) {
    std::cerr << "jcest: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "jcest: " << e.what() << '\n';
    return kNumeric;
  }
}
