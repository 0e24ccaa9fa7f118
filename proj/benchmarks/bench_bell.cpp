#include <benchmark/benchmark.h>

#include "entkit/bell.hpp"
#include "gen.hpp"

using namespace entkit;

static void BM_Exhaustive(benchmark::State& st) {
  gen::Rng g(1);
  const BellProblem p = gen::bell_problem(static_cast<int>(st.range(0)), 2, g);
  for (auto _ : st) benchmark::DoNotOptimize(classical_bound_exhaustive(p));
}
BENCHMARK(BM_Exhaustive)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_CoarseGrain(benchmark::State& st) {
  gen::Rng g(2);
  const BellProblem p = gen::pi_bell_problem(static_cast<int>(st.range(0)), 2, g);
  for (auto _ : st) benchmark::DoNotOptimize(pi_coarse_grain(p));
}
BENCHMARK(BM_CoarseGrain)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

static void BM_Anneal(benchmark::State& st) {
  gen::Rng g(3);
  const BellProblem p = gen::bell_problem(static_cast<int>(st.range(0)), 2, g);
  AnnealConfig cfg;
  cfg.parallel = false;
  for (auto _ : st) benchmark::DoNotOptimize(classical_bound_anneal(p, cfg));
}
BENCHMARK(BM_Anneal)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
