#include "jcest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jcest/error.hpp"
#include "jcest/parallel.hpp"
#include "jcest/rng.hpp"

namespace jcest {
namespace {

constexpr int kShards = 64;

void require_samples(std::int64_t n) {
  if (n < 10000) throw Error(ErrorCode::InvalidArgument, "Monte-Carlo runs need at least 1e4 samples");
}

double draw_prior(const Prior& p, CounterRng& rng) {
  const double u = rng.uniform();
  if (p.kind == PriorKind::Gaussian) return p.g0 + p.sigma * normal_quantile(u);
  return p.g0 + p.half_width() * (2.0 * u - 1.0);
}

double prior_cdf(const Prior& p, double x) {
  if (p.kind == PriorKind::Gaussian) return normal_cdf((x - p.g0) / p.sigma);
  const double h = p.half_width();
  return std::clamp((x - (p.g0 - h)) / (2.0 * h), 0.0, 1.0);
}

std::int64_t shard_begin(std::int64_t n, int k) { return n * k / kShards; }

struct Stats {
  double mean;
  double standard_error;
};

Stats sample_stats(std::vector<double>& x) {
  const std::size_t n = x.size();
  const double mean = pairwise_sum(x.data(), n) / static_cast<double>(n);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = (x[i] - mean) * (x[i] - mean);
  const double var = pairwise_sum(dev.data(), n) / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

template <class ShardLoop>
McReport quadratic_cost_impl(const MmseResult& r, const Prior& prior, const Scenario& s,
                             const FieldState& field, std::int64_t n, std::uint64_t seed, ShardLoop loop) {
  require_samples(n);
  std::vector<double> cost(static_cast<std::size_t>(n));
  loop(kShards, [&](std::size_t k) {
    CounterRng rng(seed, k);
    for (std::int64_t i = shard_begin(n, static_cast<int>(k)); i < shard_begin(n, static_cast<int>(k) + 1); ++i) {
      const double g = draw_prior(prior, rng);
      const QubitState rho = detector_state(g, s, field);
      const double p0 = std::clamp(expectation(rho.matrix(), r.projectors[0]), 0.0, 1.0);
      const double est = rng.uniform() < p0 ? r.estimates[0] : r.estimates[1];
      cost[static_cast<std::size_t>(i)] = (est - g) * (est - g);
    }
  });
  const Stats st = sample_stats(cost);
  McReport rep;
  rep.n_samples = n;
  rep.empirical_cost = st.mean;
  rep.standard_error = st.standard_error;
  rep.analytic_cost = r.c_min;
  rep.z_score = std::abs(st.mean - r.c_min) / st.standard_error;
  rep.seed = seed;
  return rep;
}

template <class ShardLoop>
EstimateDistribution estimate_distribution_impl(const MlPovm& povm, double g, std::int64_t n, std::uint64_t seed,
                                                ShardLoop loop) {
  require_samples(n);
  constexpr int kCells = 2048;
  const auto [lo, hi] = povm.prior.domain();
  const double dx = (hi - lo) / kCells;
  // CDF tabulated with Simpson's rule on each cell, then normalised.
  std::vector<double> cdf(kCells + 1, 0.0);
  auto pdf = [&](double x) { return std::max(conditional_pdf(povm, g, x), 0.0); };
  for (int i = 0; i < kCells; ++i) {
    const double a = lo + i * dx;
    cdf[i + 1] = cdf[i] + dx / 6.0 * (pdf(a) + 4.0 * pdf(a + 0.5 * dx) + pdf(a + dx));
  }
  const double total = cdf.back();
  for (double& v : cdf) v /= total;

  std::vector<double> samples(static_cast<std::size_t>(n));
  loop(kShards, [&](std::size_t k) {
    CounterRng rng(seed, k);
    for (std::int64_t i = shard_begin(n, static_cast<int>(k)); i < shard_begin(n, static_cast<int>(k) + 1); ++i) {
      const double u = rng.uniform();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t cell = std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), 1, kCells) - 1;
      const double width = cdf[cell + 1] - cdf[cell];
      const double frac = width > 0.0 ? (u - cdf[cell]) / width : 0.5;
      samples[static_cast<std::size_t>(i)] = lo + (static_cast<double>(cell) + frac) * dx;
    }
  });

  EstimateDistribution out;
  out.n_samples = n;
  out.seed = seed;
  out.hist_lo = lo;
  out.hist_hi = hi;
  out.histogram.assign(64, 0);
  for (double x : samples) {
    const int bin = std::clamp(static_cast<int>((x - lo) / (hi - lo) * 64.0), 0, 63);
    ++out.histogram[bin];
  }
  const Stats st = sample_stats(samples);
  out.mean = st.mean;
  out.standard_error = st.standard_error;
  out.quadrature_mean = ml_average_estimate(povm, g);
  out.z_score = std::abs(out.mean - out.quadrature_mean) / out.standard_error;

  std::sort(samples.begin(), samples.end());
  const double nn = static_cast<double>(n);
  double ks = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = prior_cdf(povm.prior, samples[i]);
    ks = std::max({ks, std::abs(static_cast<double>(i + 1) / nn - f), std::abs(f - static_cast<double>(i) / nn)});
  }
  out.ks_prior = ks;
  return out;
}

auto parallel_loop = [](std::size_t n, const auto& body) { parallel_for(n, body); };
auto serial_loop = [](std::size_t n, const auto& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
};

}  // namespace

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

McReport mc_quadratic_cost(const MmseResult& r, const Prior& prior, const Scenario& s, const FieldState& field,
                           std::int64_t n, std::uint64_t seed) {
  return quadratic_cost_impl(r, prior, s, field, n, seed, parallel_loop);
}

McReport mc_quadratic_cost_serial(const MmseResult& r, const Prior& prior, const Scenario& s,
                                  const FieldState& field, std::int64_t n, std::uint64_t seed) {
  return quadratic_cost_impl(r, prior, s, field, n, seed, serial_loop);
}

EstimateDistribution mc_estimate_distribution(const MlPovm& povm, double g, std::int64_t n, std::uint64_t seed) {
  return estimate_distribution_impl(povm, g, n, seed, parallel_loop);
}

EstimateDistribution mc_estimate_distribution_serial(const MlPovm& povm, double g, std::int64_t n,
                                                     std::uint64_t seed) {
  return estimate_distribution_impl(povm, g, n, seed, serial_loop);
}

GammaTriple brute_force_gamma(const Prior& prior, const Scenario& s, const FieldState& field, std::int64_t n_grid) {
  if (n_grid < 10000) throw Error(ErrorCode::InvalidArgument, "brute_force_gamma needs n_grid >= 1e4");
  const auto [lo, hi] = prior.domain();
  const double h = (hi - lo) / static_cast<double>(n_grid);
  GammaTriple out;
  for (std::int64_t i = 0; i < n_grid; ++i) {
    const double g = lo + (static_cast<double>(i) + 0.5) * h;
    const double w = h * density(prior, g);
    const Hermitian2 rho = detector_state(g, s, field).matrix();
    out.gamma0 += rho * w;
    out.gamma1 += rho * (w * g);
    out.gamma2 += rho * (w * g * g);
  }
  return out;
}

}  // namespace jcest
