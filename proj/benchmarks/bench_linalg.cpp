#include <benchmark/benchmark.h>

#include "entkit/bipartite.hpp"
#include "entkit/states.hpp"
#include "entkit/symmetric.hpp"
#include "gen.hpp"

using namespace entkit;

static void BM_PartialTranspose(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const QState rho = random_mixed(Dims::uniform(n, 2), 4, 1);
  std::vector<int> flip;
  for (int k = 0; k < n / 2; ++k) flip.push_back(k);
  for (auto _ : st) benchmark::DoNotOptimize(partial_transpose(rho.density(), rho.dims(), flip));
}
BENCHMARK(BM_PartialTranspose)->DenseRange(4, 10, 2);

static void BM_PptTest(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const QState rho = random_mixed(Dims::uniform(n, 2), 4, 2);
  std::vector<int> left;
  for (int k = 0; k < n / 2; ++k) left.push_back(k);
  const Bipartition cut(left, n);
  for (auto _ : st) benchmark::DoNotOptimize(ppt_test(rho, cut));
}
BENCHMARK(BM_PptTest)->DenseRange(2, 8, 2);

static void BM_DsHankel(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  gen::Rng g(3);
  const DSState ds(n, gen::dicke_distribution(n, g));
  for (auto _ : st) benchmark::DoNotOptimize(ds_separable(ds));
}
BENCHMARK(BM_DsHankel)->RangeMultiplier(4)->Range(4, 256);
