#pragma once

#include <cstdint>
#include <vector>

#include "jcest/jc_dynamics.hpp"
#include "jcest/ml.hpp"
#include "jcest/mmse.hpp"
#include "jcest/priors.hpp"

namespace jcest {

struct McReport {
  std::int64_t n_samples = 0;
  double empirical_cost = 0.0;
  double standard_error = 0.0;  // sample std / sqrt(n)
  double analytic_cost = 0.0;
  double z_score = 0.0;         // |empirical - analytic| / standard_error
  std::uint64_t seed = 0;
};

/// Draws g from the prior, the outcome i with probability <v_i|rho(g)|v_i>,
/// and averages (lambda_i - g)^2. Samples are split into a fixed number of
/// shards, shard k using Philox stream k, and reduced pairwise; the OpenMP and
/// serial versions return identical reports. Requires n >= 1e4.
McReport mc_quadratic_cost(const MmseResult& r, const Prior& prior, const Scenario& s,
                           const FieldState& field, std::int64_t n, std::uint64_t seed);
McReport mc_quadratic_cost_serial(const MmseResult& r, const Prior& prior, const Scenario& s,
                                  const FieldState& field, std::int64_t n, std::uint64_t seed);

struct EstimateDistribution {
  std::int64_t n_samples = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double quadrature_mean = 0.0;  // ml_average_estimate
  double z_score = 0.0;
  double ks_prior = 0.0;         // Kolmogorov–Smirnov distance of the samples to the prior CDF
  double hist_lo = 0.0;
  double hist_hi = 0.0;
  std::vector<std::int64_t> histogram;  // 64 equal bins on [hist_lo, hist_hi]
  std::uint64_t seed = 0;
};

/// Samples g~ from p(g~|g) by inverting its CDF tabulated on 2048 cells of
/// the POVM support. Requires n >= 1e4.
EstimateDistribution mc_estimate_distribution(const MlPovm& povm, double g, std::int64_t n,
                                              std::uint64_t seed);
EstimateDistribution mc_estimate_distribution_serial(const MlPovm& povm, double g, std::int64_t n,
                                                     std::uint64_t seed);

/// Gamma_k by a midpoint sum over the prior's domain; shares nothing with the
/// quadrature module. Requires n_grid >= 1e4.
GammaTriple brute_force_gamma(const Prior& prior, const Scenario& s, const FieldState& field,
                              std::int64_t n_grid);

/// Pairwise (cascade) summation.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace jcest
