#include "jcest/jc_dynamics.hpp"

#include <cmath>
#include <sstream>

#include "jcest/error.hpp"

namespace jcest {
namespace {

constexpr double kTruncationMass = 0.99;
constexpr int kSafetyLevels = 10;

// sin(x)/x without the removable singularity.
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// Real entire functions of v = u^2 for cosh(u), sinh(u)/u and (cosh(u)-1)/u^2.
// u is real for v >= 0 and imaginary otherwise; either way these are real.
struct HyperbolicOfSquare {
  double cosh_u;
  double sinh_u_over_u;
  double cosh_m1_over_u2;
};

HyperbolicOfSquare hyperbolic_of_square(double v) {
  if (std::abs(v) < 1e-6) {
    return {1.0 + v / 2.0 * (1.0 + v / 12.0), 1.0 + v / 6.0 * (1.0 + v / 20.0),
            0.5 + v / 24.0 * (1.0 + v / 30.0)};
  }
  if (v > 0.0) {
    const double u = std::sqrt(v);
    const double sh = std::sinh(0.5 * u);
    return {std::cosh(u), std::sinh(u) / u, 2.0 * sh * sh / v};
  }
  const double w = std::sqrt(-v);
  const double s = std::sin(0.5 * w);
  return {std::cos(w), std::sin(w) / w, 2.0 * s * s / w / w};
}

}  // namespace

void Scenario::validate() const {
  if (!(tau_c >= 0.0) || !(tau_f_gamma >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tau_c and gamma*tau_f must be non-negative");
  }
  if (!(kappa >= 0.0) || !(gamma_cav >= 0.0)) {
    throw Error(ErrorCode::InvalidRate, "kappa and in-cavity gamma must be non-negative");
  }
  if (!std::isfinite(delta) || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw Error(ErrorCode::InvalidArgument, "detuning and alpha must be finite");
  }
  if (fock_cutoff && *fock_cutoff < 0) {
    throw Error(ErrorCode::InvalidArgument, "Fock cutoff must be non-negative");
  }
  if (model == CavityModel::Dissipative && !resonant_vacuum()) {
    throw Error(ErrorCode::UnsupportedCombination,
                "the dissipative cavity model needs delta = 0 and alpha = 0");
  }
  if (model == CavityModel::Unitary && (kappa != 0.0 || gamma_cav != 0.0)) {
    throw Error(ErrorCode::UnsupportedCombination,
                "kappa and in-cavity gamma apply to the dissipative model only");
  }
}

FieldState FieldState::vacuum() { return FieldState{{cplx{1.0, 0.0}}}; }

FieldState FieldState::coherent(cplx alpha, std::optional<int> cutoff) {
  if (alpha == cplx{} && !cutoff) return vacuum();
  FieldState f;
  cplx a = std::exp(-0.5 * std::norm(alpha));
  f.coefficients.push_back(a);
  double mass = std::norm(a);
  if (cutoff) {
    for (int n = 1; n <= *cutoff; ++n) {
      a *= alpha / std::sqrt(static_cast<double>(n));
      f.coefficients.push_back(a);
    }
    return f;
  }
  int n = 0;
  while (mass < kTruncationMass) {
    ++n;
    a *= alpha / std::sqrt(static_cast<double>(n));
    f.coefficients.push_back(a);
    mass += std::norm(a);
  }
  for (int k = 0; k < kSafetyLevels; ++k) {
    ++n;
    a *= alpha / std::sqrt(static_cast<double>(n));
    f.coefficients.push_back(a);
  }
  return f;
}

double FieldState::mass() const {
  double m = 0.0;
  for (const cplx& a : coefficients) m += std::norm(a);
  return m;
}

bool FieldState::is_vacuum() const {
  if (coefficients.empty() || coefficients[0] != cplx{1.0, 0.0}) return false;
  for (std::size_t i = 1; i < coefficients.size(); ++i) {
    if (coefficients[i] != cplx{}) return false;
  }
  return true;
}

FieldState field_for(const Scenario& s) { return FieldState::coherent(s.alpha, s.fock_cutoff); }

double rabi_frequency(int n, double g, double delta) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Rabi frequency needs n >= 1");
  return std::sqrt(0.25 * delta * delta + g * g * n);
}

QubitState reduced_state(double g, const Scenario& s, const FieldState& field) {
  const double mass = field.mass();
  if (1.0 - mass > 1.0 - kTruncationMass) {
    std::ostringstream os;
    os << "field truncation keeps only " << mass << " of the norm";
    throw Error(ErrorCode::TruncationTooSmall, os.str());
  }
  const double t = s.tau_c;
  const std::size_t k = field.coefficients.size();

  // Sector n couples |e,n-1> and |g,n| with H_n = [[D/2, g sqrt n], [g sqrt n, -D/2]],
  // so exp(-i H_n t)|e,n-1> = (cos(lt) - i D/2 sin(lt)/l)|e,n-1> - i g sqrt(n) sin(lt)/l |g,n>.
  double a_ee = 0.0;
  double ground = 0.0;
  cplx a_eg{};
  cplx prev_cg{};
  for (std::size_t i = 0; i < k; ++i) {
    const int n = static_cast<int>(i) + 1;
    const double lam = rabi_frequency(n, g, s.delta);
    const double st = t * sinc(lam * t);  // sin(lt)/l
    const cplx a = field.coefficients[i];
    const cplx ce = cplx(std::cos(lam * t), -0.5 * s.delta * st) * a;
    const cplx cg = cplx(0.0, -g * std::sqrt(static_cast<double>(n)) * st) * a;
    a_ee += std::norm(ce);
    ground += std::norm(cg);
    // <e,m|psi><psi|g,m> pairs c_e of sector m+1 with c_g of sector m.
    if (i > 0) a_eg += ce * std::conj(prev_cg);
    prev_cg = cg;
  }
  ground += 1.0 - mass;  // untracked tail counted as ground so the trace stays exact

  const double decay = std::exp(-s.tau_f_gamma);
  Hermitian2 rho;
  rho.ee = a_ee * decay;
  rho.gg = ground * decay - std::expm1(-s.tau_f_gamma);
  rho.eg = a_eg * std::exp(-0.5 * s.tau_f_gamma);
  return QubitState::trusted(rho);
}

double dissipative_population(double g, double t, double gamma, double kappa) {
  if (!(gamma >= 0.0) || !(kappa >= 0.0)) {
    throw Error(ErrorCode::InvalidRate, "gamma and kappa must be non-negative");
  }
  // Omega^2 = (gamma-kappa)^2 - 16 g^2 and u = Omega t / 2, written through u^2
  // so the oscillatory, critical and overdamped regimes share one expression.
  const double d = gamma - kappa;
  const double v = 0.25 * (d * d - 16.0 * g * g) * t * t;
  const HyperbolicOfSquare h = hyperbolic_of_square(v);
  const double bracket = 0.5 * (1.0 + h.cosh_u) + d * d * t * t * h.cosh_m1_over_u2 / 8.0 -
                         d * 0.5 * t * h.sinh_u_over_u;
  return std::exp(-0.5 * (gamma + kappa) * t) * bracket;
}

QubitState dissipative_state(double g, double t, double gamma, double kappa) {
  const double f = dissipative_population(g, t, gamma, kappa);
  return QubitState::trusted(Hermitian2::diag(f, 1.0 - f));
}

QubitState detector_state(double g, const Scenario& s, const FieldState& field) {
  if (s.model == CavityModel::Unitary) return reduced_state(g, s, field);
  const double f = dissipative_population(g, s.tau_c, s.gamma_cav, s.kappa);
  const double decay = std::exp(-s.tau_f_gamma);
  return QubitState::trusted(Hermitian2::diag(f * decay, (1.0 - f) * decay - std::expm1(-s.tau_f_gamma)));
}

double state_frequency_hint(const Scenario& s, const FieldState& field) {
  if (s.model == CavityModel::Dissipative) return 2.0 * s.tau_c;
  const double levels = static_cast<double>(field.coefficients.size());
  // Neighbouring sectors beat at l_{n+1} + l_n in the coherence.
  return 2.0 * s.tau_c * std::sqrt(levels + 1.0);
}

}  // namespace jcest
