#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jcest/config.hpp"
#include "jcest/jc_dynamics.hpp"
#include "jcest/priors.hpp"

namespace jcest {

struct SweepSpec {
  SweepAxis sweep;
  ModelConfig model;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Throws UnsupportedCombination naming the violated constraint.
void validate_sweep(const SweepSpec& spec);

/// One row per axis point, in axis order. Points are evaluated concurrently
/// into pre-sized slots; run_sweep_serial is the single-threaded reference
/// and produces the same table.
Table run_sweep(const SweepSpec& spec);
Table run_sweep_serial(const SweepSpec& spec);

/// argmin of c_min over g0 tau_c in [0.05, 3]: 300-point scan, then golden
/// section on the bracketing cells down to 1e-5 in g0 tau_c. Returns tau_c in
/// absolute units. Points where the solve degenerates are skipped.
double find_tau_star(const Prior& prior, const Scenario& s, const FieldState& field, int quad_points = 256);

/// The interaction time a config asks for: tau_c, or tau* when tau_c = star.
double resolve_tau(const ModelConfig& m);

/// 17 significant digits, scientific, '.' separator regardless of locale.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
nlohmann::json table_to_json(const Table& t);

/// Resolved configuration in units of g0, for provenance in JSON output.
nlohmann::json config_to_json(const ModelConfig& m, const std::optional<SweepAxis>& sweep);

}  // namespace jcest
