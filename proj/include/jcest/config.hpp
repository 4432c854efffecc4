#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "jcest/jc_dynamics.hpp"
#include "jcest/priors.hpp"

namespace jcest {

enum class Quantity {
  MmseEigenvalues,
  MmseCost,
  MmseAvgEstimate,
  MmseCrBound,
  MlCost,
  MlAvgEstimate,
  MlCrBound,
  DissipativeCost,
};

enum class Axis { TauC, GOverG0, Delta, GammaTauF };

std::string_view to_string(Quantity q);
std::string_view to_string(Axis a);
Quantity parse_quantity(std::string_view s);  // throws ConfigError
Axis parse_axis(std::string_view s);

/// Everything needed to evaluate one scenario. Stored in absolute units
/// (g0 carries the scale); the file format is in units of g0.
struct ModelConfig {
  Prior prior = Prior::gaussian(1.0, 1.0);
  Scenario scenario;
  bool tau_star = false;    // replace scenario.tau_c by find_tau_star
  double g_over_g0 = 1.0;   // true coupling for per-g quantities (state, bounds)
  int quad_points = 256;
};

struct SweepAxis {
  Quantity quantity = Quantity::MmseCost;
  Axis axis = Axis::TauC;
  double lo = 0.0;  // in units of g0 (g0 tau_c, g/g0, delta/g0, gamma tau_f)
  double hi = 1.0;
  int n_points = 2;
};

struct RunConfig {
  ModelConfig model;
  std::optional<SweepAxis> sweep;
};

/// INI text with sections [prior], [scenario], [sweep]:
///
///   [prior]      kind = gaussian|uniform, g0, sigma (units of g0)
///   [scenario]   tau_c (g0 tau_c, or "star"), gamma_tau_f, delta, alpha,
///                alpha_phase, kappa, gamma, model = unitary|dissipative,
///                fock_cutoff (integer or "auto"), g (g/g0), quad_points
///   [sweep]      quantity, axis, lo, hi, n
///
/// Unknown sections or keys, malformed numbers and out-of-range values all
/// raise ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace jcest
