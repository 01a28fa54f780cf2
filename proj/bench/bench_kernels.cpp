// Serial reference vs OpenMP variants of the per-level kernels.
// Second argument of every benchmark: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "phi4/dynamics.hpp"
#include "phi4/envelopes.hpp"
#include "phi4/kernels.hpp"
#include "phi4/solver.hpp"

using namespace phi4;

namespace {

Exec mode(const benchmark::State& s) {
  return s.range(1) == 0 ? Exec::serial : Exec::parallel;
}

GreenSequence start(int N) {
  const auto env = build_envelopes(Coupling(0.03), N);
  GreenSequence h = env.h0;
  h.set_closure({ClosurePolicy::envelope_min,
                 closure_tail(env, ClosurePolicy::envelope_min)});
  return h;
}

void BM_DTable(benchmark::State& s) {
  const int N = static_cast<int>(s.range(0));
  const auto h = start(N);
  const auto table = PartitionTable::shared(N + 2);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::d_table(h, *table, mode(s)));
}

void BM_TreeTable(benchmark::State& s) {
  const int N = static_cast<int>(s.range(0));
  const auto h = start(N);
  const auto table = PartitionTable::shared(N + 2);
  for (auto _ : s)
    benchmark::DoNotOptimize(kernels::tree_table(h, *table, mode(s)));
}

void BM_MapStar(benchmark::State& s) {
  const int N = static_cast<int>(s.range(0));
  const auto h = start(N);
  for (auto _ : s) benchmark::DoNotOptimize(apply_map_star(h, mode(s)));
}

void BM_Sweep(benchmark::State& s) {
  std::vector<double> grid;
  for (int i = 1; i <= static_cast<int>(s.range(0)); ++i) grid.push_back(0.002 * i);
  for (auto _ : s) benchmark::DoNotOptimize(sweep(grid, {}, mode(s)));
}

void BM_Contraction(benchmark::State& s) {
  const int trials = static_cast<int>(s.range(0));
  for (auto _ : s)
    benchmark::DoNotOptimize(
        empirical_contraction(Coupling(0.01), 41, trials, 1, {}, mode(s)));
}

}  // namespace

BENCHMARK(BM_DTable)->ArgsProduct({{41, 101, 201}, {0, 1}});
BENCHMARK(BM_TreeTable)->ArgsProduct({{41, 101, 201}, {0, 1}});
BENCHMARK(BM_MapStar)->ArgsProduct({{41, 101, 201}, {0, 1}});
BENCHMARK(BM_Sweep)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Contraction)->ArgsProduct({{100}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
