#include "jcest/priors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jcest/error.hpp"
#include "jcest/quadrature.hpp"

namespace jcest {
namespace {
constexpr double kGaussianWindow = 8.0;
constexpr int kPanelOrder = 16;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

void Prior::validate() const {
  if (!(g0 > 0.0) || !(sigma > 0.0) || !std::isfinite(g0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "prior needs g0 > 0 and sigma > 0");
  }
}

double Prior::half_width() const {
  return kind == PriorKind::Uniform ? kSqrt3 * sigma : kGaussianWindow * sigma;
}

std::pair<double, double> Prior::domain() const {
  const double h = half_width();
  return {g0 - h, g0 + h};
}

double density(const Prior& p, double g) {
  if (p.kind == PriorKind::Gaussian) {
    const double u = (g - p.g0) / p.sigma;
    return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * std::numbers::pi) * p.sigma);
  }
  const double h = kSqrt3 * p.sigma;
  return std::abs(g - p.g0) <= h ? 1.0 / (2.0 * h) : 0.0;
}

Moments moments(const Prior& p) { return {p.g0, p.sigma * p.sigma}; }

QuadratureRule quadrature(const Prior& p, int n_points, double max_angular_frequency) {
  p.validate();
  if (n_points < 64) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least 64 nodes");
  const auto [lo, hi] = p.domain();
  const double width = hi - lo;
  int panels = (n_points + kPanelOrder - 1) / kPanelOrder;
  if (p.kind == PriorKind::Gaussian) {
    panels = std::max(panels, static_cast<int>(std::ceil(width / p.sigma - 1e-9)));
  }
  if (max_angular_frequency > 0.0) {
    const double period = 2.0 * std::numbers::pi / max_angular_frequency;
    panels = std::max(panels, static_cast<int>(std::ceil(width / period)));
  }
  Rule r = composite_gauss_legendre(lo, hi, panels, kPanelOrder);
  QuadratureRule q;
  q.nodes = std::move(r.nodes);
  q.weights = std::move(r.weights);
  q.density.reserve(q.nodes.size());
  for (double g : q.nodes) q.density.push_back(density(p, g));
  return q;
}

}  // namespace jcest
