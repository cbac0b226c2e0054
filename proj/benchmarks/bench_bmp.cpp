#include <benchmark/benchmark.h>

#include "msh/bmp.hpp"

using namespace msh;

namespace {

std::shared_ptr<const Block> regular(CartanType t, int rank) {
  return build_block(RootSystem::build(t, rank), Weight(rank, Rational(-2)));
}

const std::shared_ptr<const Block>& cached(int which) {
  static const std::shared_ptr<const Block> blocks[] = {regular(CartanType::A, 2), regular(CartanType::B, 2),
                                                        regular(CartanType::A, 3), regular(CartanType::B, 3)};
  return blocks[which];
}

// BMP sheaf at the top vertex, the largest support.
void BM_BmpTop(benchmark::State& state) {
  const auto& b = cached(static_cast<int>(state.range(0)));
  const KLTable table(b->group);
  const std::size_t top = b->graph.vertex_count() - 1;
  for (auto _ : state) benchmark::DoNotOptimize(bmp(b, Direction::Down, top, {}, &table));
  state.SetLabel(b->root_system.name());
}
BENCHMARK(BM_BmpTop)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_MultiplicityTable(benchmark::State& state) {
  const auto& b = cached(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity_table(b, Direction::Down));
  state.SetLabel(b->root_system.name());
}
BENCHMARK(BM_MultiplicityTable)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BuildBlock(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(CartanType::B, 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_block(rs, Weight(3, Rational(-2))));
}
BENCHMARK(BM_BuildBlock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
