#pragma once

#include <functional>
#include <vector>

namespace jcest {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [-1, 1] (Newton iteration on P_n).
const Rule& gauss_legendre(int n);

/// `panels` equal panels on [a, b], each with an `order`-point Gauss–Legendre rule.
Rule composite_gauss_legendre(double a, double b, int panels, int order = 16);

/// Integrates f over [a, b] on a composite rule.
double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels,
                           int order = 16);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss–Kronrod (7/15) bisection. Stops a subinterval when its
/// Kronrod–Gauss difference is below max(abs_tol, rel_tol*|local|) scaled to
/// its share of [a, b], or at max_depth.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-13, double rel_tol = 1e-12, int max_depth = 40);

}  // namespace jcest
