#pragma once

#include <utility>
#include <vector>

namespace jcest {

enum class PriorKind { Gaussian, Uniform };

/// Prior on the coupling g with mean g0 and standard deviation sigma. The
/// uniform law lives on [g0 - sqrt(3) sigma, g0 + sqrt(3) sigma].
struct Prior {
  PriorKind kind = PriorKind::Gaussian;
  double g0 = 1.0;
  double sigma = 1.0;

  static Prior gaussian(double g0, double sigma) { return {PriorKind::Gaussian, g0, sigma}; }
  static Prior uniform(double g0, double sigma) { return {PriorKind::Uniform, g0, sigma}; }

  /// Throws InvalidArgument unless g0 and sigma are positive and finite.
  void validate() const;
  /// Half-width of the support (uniform) or of the +-8 sigma integration window (Gaussian).
  double half_width() const;
  /// Integration interval: exact support for uniform, g0 +- 8 sigma for Gaussian.
  std::pair<double, double> domain() const;
};

double density(const Prior& p, double g);

struct Moments {
  double mean;
  double variance;
};
Moments moments(const Prior& p);

enum class QuadratureKind { GaussLegendreComposite, GaussHermiteMapped };

/// Nodes and plain dg weights over the prior's domain, with the density at
/// each node cached: sum_i weights[i] * density[i] * f(nodes[i]) ~ E[f(g)].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> density;
  QuadratureKind kind = QuadratureKind::GaussLegendreComposite;

  std::size_t size() const { return nodes.size(); }
};

/// Composite 16-point Gauss–Legendre over domain(). At least n_points nodes;
/// panels are at most one sigma wide (Gaussian) and at most one period of
/// max_angular_frequency wide, so integrands like cos(w g) stay resolved.
QuadratureRule quadrature(const Prior& p, int n_points = 256, double max_angular_frequency = 0.0);

}  // namespace jcest
