#include "jcest/ml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jcest/error.hpp"
#include "jcest/quadrature.hpp"
#include "jcest/rng.hpp"

namespace jcest {
namespace {

const double kSqrt3 = std::sqrt(3.0);
constexpr double kSinFloor = 1e-14;
constexpr double kAuditTol = 1e-9;

double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// Subtracted constant of the uniform fz: the support average of cos(2 g tau).
double uniform_offset(const Prior& p, double tau) {
  const double h = kSqrt3 * p.sigma;
  return sinc(2.0 * h * tau) * std::cos(2.0 * p.g0 * tau);
}

// (sin x - x cos x) / x^2
double s1(double x) {
  if (std::abs(x) < 1e-3) return x / 3.0 - x * x * x / 30.0;
  return (std::sin(x) - x * std::cos(x)) / (x * x);
}

int support_panels(const MlPovm& povm) {
  const auto [lo, hi] = povm.prior.domain();
  const double width = hi - lo;
  int panels = 64;
  if (povm.prior.kind == PriorKind::Gaussian) {
    panels = std::max(panels, static_cast<int>(std::ceil(2.0 * width / povm.prior.sigma)));
  }
  // Integrands reach cos(2 g tau) * fz(g): angular frequency up to 4 tau.
  const double period = 2.0 * std::numbers::pi / std::max(4.0 * povm.tau_c, 1e-300);
  panels = std::max(panels, static_cast<int>(std::ceil(2.0 * width / period)));
  return panels;
}

double excited_population(const MlPovm& povm, double g) {
  const double c = std::cos(g * povm.tau_c);
  return c * c * std::exp(-povm.gamma_tau_f);
}

}  // namespace

double MlPovm::fI(double x) const { return density(prior, x); }

double MlPovm::fz(double x) const {
  if (fz_vanishes) return 0.0;
  if (prior.kind == PriorKind::Gaussian) {
    const double u = x - prior.g0;
    return -c * std::sin(2.0 * prior.g0 * tau_c) * std::sin(2.0 * tau_c * u) *
           std::exp(-0.5 * u * u / (prior.sigma * prior.sigma));
  }
  if (std::abs(x - prior.g0) > kSqrt3 * prior.sigma) return 0.0;
  return c * (std::cos(2.0 * x * tau_c) - uniform_offset(prior, tau_c));
}

MlPovm MlPovm::scaled(double factor) const {
  MlPovm out = *this;
  out.c *= factor;
  return out;
}

GaussianCmax gaussian_cmax_bounds(const Prior& prior, double tau_c) {
  prior.validate();
  if (!(tau_c > 0.0)) throw Error(ErrorCode::InvalidArgument, "ML normalization needs tau_c > 0");
  const double s = std::abs(std::sin(2.0 * prior.g0 * tau_c));
  if (s < kSinFloor) {
    throw Error(ErrorCode::SinVanishes, "sin(2 g0 tau_c) = 0 leaves fz unconstrained");
  }
  const double st = prior.sigma * tau_c;
  const double y = prior.sigma * s;
  // Beyond x = 40 the Gaussian weight is below 1e-300.
  const double upper = std::min(std::numbers::pi / (2.0 * st), 40.0);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double i0 = integrate_adaptive([&](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }, 0.0, upper,
                                       1e-15, 1e-14)
                        .value;
  const double i1 = integrate_adaptive([&](double x) { return std::exp(-0.5 * x * x) * std::sin(2.0 * st * x); }, 0.0,
                                       upper, 1e-15, 1e-14)
                        .value;
  GaussianCmax out{};
  out.c1 = i0 / (y * i1);
  out.c2 = (1.0 - i0) / (y * i1);
  out.pointwise = inv_sqrt_2pi / y;
  out.c_max = std::min({out.c1, out.c2, out.pointwise});
  return out;
}

double gaussian_cmax(const Prior& prior, double tau_c) { return gaussian_cmax_bounds(prior, tau_c).c_max; }

MlPovm gaussian_ml_povm(const Prior& prior, double tau_c, double gamma_tau_f) {
  if (prior.kind != PriorKind::Gaussian) throw Error(ErrorCode::InvalidArgument, "Gaussian POVM needs a Gaussian prior");
  MlPovm povm{prior, tau_c, gamma_tau_f, 0.0, false};
  try {
    povm.c = gaussian_cmax(prior, tau_c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SinVanishes) throw;
    povm.c = std::numeric_limits<double>::infinity();
    povm.fz_vanishes = true;
  }
  return povm;
}

double gaussian_cost_max(const MlPovm& povm) {
  const double sigma = povm.prior.sigma;
  const double base = 1.0 / std::sqrt(4.0 * std::numbers::pi * sigma * sigma);
  if (povm.fz_vanishes) return base;
  const double st = sigma * povm.tau_c;
  const double s = std::sin(2.0 * povm.prior.g0 * povm.tau_c);
  return base + povm.c * std::exp(-povm.gamma_tau_f) * (-std::expm1(-4.0 * st * st)) / (2.0 * std::numbers::sqrt2) * s * s;
}

double uniform_cmax(const Prior& prior, double tau_c) {
  prior.validate();
  if (!(tau_c > 0.0)) throw Error(ErrorCode::InvalidArgument, "ML normalization needs tau_c > 0");
  const double h = kSqrt3 * prior.sigma;
  const double a = 2.0 * h * tau_c;         // 2 sqrt3 sigma tau
  const double b = 2.0 * prior.g0 * tau_c;  // 2 g0 tau
  const double k0 = std::sin(a) * std::cos(b);
  const double span = h / prior.g0;

  // Interval [lo, hi] in Theta <-> x = (hi-lo)/(2h) in [0,1], y = (hi+lo)/(2 g0).
  // Its integral of fI +- fz is x +- c k(x, y); feasibility needs c |k| <= min(x, 1-x).
  auto ratio = [&](double x, double y) {
    x = std::clamp(x, 0.0, 1.0);
    const double half = span * (1.0 - x);
    y = std::clamp(y, 1.0 - half, 1.0 + half);
    // k / x written through sinc so that x -> 0 is the pointwise limit.
    const double k_over_x = (a * sinc(a * x) * std::cos(b * y) - k0) / tau_c;
    if (x <= 0.5) return std::abs(k_over_x);
    return std::abs(k_over_x) * x / (1.0 - x);
  };

  constexpr int kGrid = 400;
  double best = 0.0, bx = 0.0, by = 1.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;  // x = 1 has a single, trivially feasible interval
    const double half = span * (1.0 - x);
    for (int j = 0; j < kGrid; ++j) {
      const double y = 1.0 - half + 2.0 * half * j / (kGrid - 1);
      const double r = ratio(x, y);
      if (r > best) best = r, bx = x, by = y;
    }
  }
  // Zoom around the best cell.
  double wx = 1.0 / kGrid, wy = 2.0 * span / (kGrid - 1);
  for (int round = 0; round < 12; ++round) {
    const double cx = bx, cy = by;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double x = std::clamp(cx + wx * i / 10.0, 0.0, 1.0 - 1e-12);
        const double half = span * (1.0 - x);
        const double y = std::clamp(cy + wy * j / 10.0, 1.0 - half, 1.0 + half);
        const double r = ratio(x, y);
        if (r > best) best = r, bx = x, by = y;
      }
    }
    wx *= 0.25;
    wy *= 0.25;
  }
  if (best <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / best;
}

MlPovm uniform_ml_povm(const Prior& prior, double tau_c, double gamma_tau_f) {
  if (prior.kind != PriorKind::Uniform) throw Error(ErrorCode::InvalidArgument, "uniform POVM needs a uniform prior");
  MlPovm povm{prior, tau_c, gamma_tau_f, uniform_cmax(prior, tau_c), false};
  if (!std::isfinite(povm.c)) povm.fz_vanishes = true;
  return povm;
}

double uniform_cost_max(const MlPovm& povm) {
  const double sigma = povm.prior.sigma;
  const double h = kSqrt3 * sigma;
  const double base = 1.0 / (2.0 * h);
  if (povm.fz_vanishes) return base;
  const double t = povm.tau_c;
  const double g0 = povm.prior.g0;
  const double k = uniform_offset(povm.prior, t);
  // sin(4 h t) cos(4 g0 t) / (8 h t) = sinc(4 h t) cos(4 g0 t) / 2
  const double bracket = 0.5 - k * k + 0.5 * sinc(4.0 * h * t) * std::cos(4.0 * g0 * t);
  return base + povm.c * bracket * std::exp(-povm.gamma_tau_f);
}

MlPovm ml_povm(const Prior& prior, double tau_c, double gamma_tau_f) {
  return prior.kind == PriorKind::Gaussian ? gaussian_ml_povm(prior, tau_c, gamma_tau_f)
                                           : uniform_ml_povm(prior, tau_c, gamma_tau_f);
}

double cost_max(const MlPovm& povm) {
  return povm.prior.kind == PriorKind::Gaussian ? gaussian_cost_max(povm) : uniform_cost_max(povm);
}

double integrate_support(const MlPovm& povm, const std::function<double(double)>& f) {
  const auto [lo, hi] = povm.prior.domain();
  return integrate_composite(f, lo, hi, support_panels(povm));
}

double cost_max_quadrature(const MlPovm& povm) {
  return integrate_support(povm, [&](double g) {
    return density(povm.prior, g) * conditional_pdf(povm, g, g);
  });
}

double conditional_pdf(const MlPovm& povm, double g, double g_tilde) {
  const double p = excited_population(povm, g);
  return povm.fI(g_tilde) + povm.fz(g_tilde) * (2.0 * p - 1.0);
}

double ml_average_estimate(const MlPovm& povm, double g) {
  return integrate_support(povm, [&](double gt) { return gt * conditional_pdf(povm, g, gt); });
}

double fz_first_moment(const MlPovm& povm) {
  if (povm.fz_vanishes) return 0.0;
  return integrate_support(povm, [&](double gt) { return gt * povm.fz(gt); });
}

double ml_average_estimate_closed(const MlPovm& povm, double g) {
  const double g0 = povm.prior.g0;
  if (povm.fz_vanishes) return g0;
  const double sigma = povm.prior.sigma;
  const double t = povm.tau_c;
  const double s0 = std::sin(2.0 * g0 * t);
  double moment;  // integral of (g~ - g0) fz(g~)
  if (povm.prior.kind == PriorKind::Gaussian) {
    moment = -2.0 * std::sqrt(2.0 * std::numbers::pi) * povm.c * sigma * sigma * sigma * t *
             std::exp(-2.0 * sigma * sigma * t * t) * s0;
  } else {
    const double h = kSqrt3 * sigma;
    moment = -2.0 * povm.c * h * h * s0 * s1(2.0 * h * t);
  }
  return g0 + (2.0 * excited_population(povm, g) - 1.0) * moment;
}

double ml_average_estimate_printed(const MlPovm& povm, double g) {
  const double g0 = povm.prior.g0;
  if (povm.fz_vanishes) return g0;
  const double sigma = povm.prior.sigma;
  const double t = povm.tau_c;
  const double cg = std::cos(g * t);
  return g0 + 4.0 * std::sqrt(5.0 * std::numbers::pi) * povm.c * sigma * sigma * t *
                  std::exp(-2.0 * sigma * sigma * t * t - povm.gamma_tau_f) *
                  (std::exp(povm.gamma_tau_f) - 2.0 * cg * cg) * std::sin(2.0 * g0 * t);
}

double ml_mse(const MlPovm& povm, double g) {
  return integrate_support(povm, [&](double gt) { return (gt - g) * (gt - g) * conditional_pdf(povm, g, gt); });
}

PositivityAudit audit_positivity(const MlPovm& povm, int n_intervals, std::uint64_t seed) {
  PositivityAudit audit;
  audit.min_value = std::numeric_limits<double>::infinity();
  audit.max_value = -std::numeric_limits<double>::infinity();
  const auto [lo, hi] = povm.prior.domain();
  const double width = hi - lo;
  const Prior& p = povm.prior;
  CounterRng rng(seed, 0x61756469ull);

  auto integral_fi = [&](double u, double v) {
    if (p.kind == PriorKind::Gaussian) {
      const double s = std::numbers::sqrt2 * p.sigma;
      return 0.5 * (std::erf((v - p.g0) / s) - std::erf((u - p.g0) / s));
    }
    return (v - u) / (2.0 * kSqrt3 * p.sigma);
  };
  auto integral_fz = [&](double u, double v) {
    if (povm.fz_vanishes) return 0.0;
    if (p.kind == PriorKind::Uniform) {
      const double t = povm.tau_c;
      return povm.c * ((std::sin(2.0 * v * t) - std::sin(2.0 * u * t)) / (2.0 * t) - uniform_offset(p, t) * (v - u));
    }
    return integrate_adaptive([&](double x) { return povm.fz(x); }, u, v, 1e-15, 1e-13).value;
  };

  for (int i = 0; i < n_intervals; ++i) {
    double u, v;
    if (i % 2 == 0) {
      u = lo + width * rng.uniform();
      v = lo + width * rng.uniform();
      if (u > v) std::swap(u, v);
    } else {
      const double centre = lo + width * rng.uniform();
      const double w = width * std::exp(std::log(1e-4) * rng.uniform());
      u = std::max(lo, centre - 0.5 * w);
      v = std::min(hi, centre + 0.5 * w);
    }
    const double fi = integral_fi(u, v);
    const double fz = integral_fz(u, v);
    const double plus = fi + fz;
    const double minus = fi - fz;
    audit.min_value = std::min({audit.min_value, plus, minus});
    audit.max_value = std::max({audit.max_value, plus, minus});
    if (std::min(plus, minus) < -kAuditTol || std::max(plus, minus) > 1.0 + kAuditTol) ++audit.violations;
    ++audit.intervals;
  }
  return audit;
}

}  // namespace jcest
