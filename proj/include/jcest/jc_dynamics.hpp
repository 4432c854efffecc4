#pragma once

#include <optional>
#include <vector>

#include "jcest/hermitian2.hpp"

namespace jcest {

enum class CavityModel {
  Unitary,      // lossless transit, arbitrary detuning and coherent field
  Dissipative,  // in-cavity TLS decay and cavity leakage; resonant, vacuum only
};

/// All knobs of one transit. Rates and times are in the same units as g.
struct Scenario {
  double tau_c = 0.0;        // interaction time
  double tau_f_gamma = 0.0;  // free-flight decay exponent gamma * tau_f
  double delta = 0.0;        // detuning
  cplx alpha{};              // coherent amplitude
  double kappa = 0.0;        // cavity leakage (dissipative model)
  double gamma_cav = 0.0;    // in-cavity TLS decay (dissipative model)
  std::optional<int> fock_cutoff;  // highest Fock index kept; nullopt = automatic
  CavityModel model = CavityModel::Unitary;

  /// Throws InvalidArgument / InvalidRate / UnsupportedCombination.
  void validate() const;
  bool resonant_vacuum() const { return delta == 0.0 && alpha == cplx{}; }
};

/// Initial field amplitudes a_0..a_N.
struct FieldState {
  std::vector<cplx> coefficients;

  static FieldState vacuum();
  /// Coherent state truncated at `cutoff`, or, when absent, at the smallest N
  /// holding 99% of the norm plus ten extra levels.
  static FieldState coherent(cplx alpha, std::optional<int> cutoff = std::nullopt);

  double mass() const;
  bool is_vacuum() const;
};

/// The field state a scenario asks for.
FieldState field_for(const Scenario& s);

/// Effective Rabi frequency sqrt(delta^2/4 + g^2 n).
double rabi_frequency(int n, double g, double delta);

/// TLS state at the detector after a unitary transit and free-flight decay.
/// Throws TruncationTooSmall when the field keeps less than 99% of its norm.
QubitState reduced_state(double g, const Scenario& s, const FieldState& field);

/// Excited-state population after time t for |e,0> under TLS decay gamma and
/// cavity leakage kappa, at resonance.
double dissipative_population(double g, double t, double gamma, double kappa);

/// diag(f, 1 - f) from dissipative_population. Throws InvalidRate on negative rates.
QubitState dissipative_state(double g, double t, double gamma, double kappa);

/// Dispatches on s.model; the dissipative branch also applies the free-flight decay.
QubitState detector_state(double g, const Scenario& s, const FieldState& field);

/// Largest angular frequency (in g) of any oscillation in detector_state,
/// used to size quadrature panels.
double state_frequency_hint(const Scenario& s, const FieldState& field);

}  // namespace jcest
