#include <benchmark/benchmark.h>

#include "entkit/mps.hpp"
#include "entkit/states.hpp"

using namespace entkit;

static void BM_ToMps(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const QState psi = random_pure(Dims::uniform(n, 2), 1);
  for (auto _ : st) benchmark::DoNotOptimize(to_mps(psi, 1 << 20));
}
BENCHMARK(BM_ToMps)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_AkltSectors(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto h = aklt_hamiltonian(n);
  const RVec sz = spin1_total_sz(n);
  for (auto _ : st) benchmark::DoNotOptimize(ground_state_sectors(h, sz));
}
BENCHMARK(BM_AkltSectors)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);
