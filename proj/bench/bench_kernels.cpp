// Serial references against the OpenMP kernels. Pass --benchmark_filter to
// narrow; the thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "jcest/mmse.hpp"
#include "jcest/oracle.hpp"
#include "jcest/runner.hpp"

using namespace jcest;

namespace {

Scenario coherent_scenario() {
  Scenario s;
  s.tau_c = 0.8;
  s.delta = 0.3;
  s.alpha = {2.0, 0.5};
  return s;
}

template <bool Parallel>
void BM_GammaMoments(benchmark::State& state) {
  const Prior p = Prior::gaussian(1.0, 1.0);
  const Scenario s = coherent_scenario();
  const FieldState f = field_for(s);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GammaTriple g = Parallel ? gamma_moments(p, s, f, n) : gamma_moments_serial(p, s, f, n);
    benchmark::DoNotOptimize(g);
  }
}

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.sweep = {Quantity::MmseCost, Axis::TauC, 0.01, 3.0, static_cast<int>(state.range(0))};
  spec.model.prior = Prior::uniform(1.0, 1.0);
  spec.model.scenario.alpha = {1.0, 0.0};
  for (auto _ : state) {
    Table t = Parallel ? run_sweep(spec) : run_sweep_serial(spec);
    benchmark::DoNotOptimize(t);
  }
}

template <bool Parallel>
void BM_MonteCarlo(benchmark::State& state) {
  const Prior p = Prior::gaussian(1.0, 1.0);
  const Scenario s = coherent_scenario();
  const FieldState f = field_for(s);
  const MmseResult r = solve_mmse(p, s, f);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    McReport rep = Parallel ? mc_quadratic_cost(r, p, s, f, n, 1) : mc_quadratic_cost_serial(r, p, s, f, n, 1);
    benchmark::DoNotOptimize(rep);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_GammaMoments<false>)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaMoments<true>)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sweep<false>)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<true>)->Arg(300)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarlo<false>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<true>)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
