#include <benchmark/benchmark.h>

#include "msh/hecke.hpp"

using namespace msh;

namespace {

void BM_KLTable(benchmark::State& state, CartanType type, int rank) {
  const CoxeterGroup w = CoxeterGroup::weyl(RootSystem::build(type, rank));
  for (auto _ : state) benchmark::DoNotOptimize(KLTable(w));
  state.counters["elements"] = static_cast<double>(w.size());
}
BENCHMARK_CAPTURE(BM_KLTable, A3, CartanType::A, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KLTable, B3, CartanType::B, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KLTable, A4, CartanType::A, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KLTable, D4, CartanType::D, 4)->Unit(benchmark::kMillisecond);

void BM_WeylGroup(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(CartanType::B, 4);
  for (auto _ : state) benchmark::DoNotOptimize(CoxeterGroup::weyl(rs));
}
BENCHMARK(BM_WeylGroup)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
