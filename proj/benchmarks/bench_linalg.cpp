#include <benchmark/benchmark.h>

#include <random>

#include "msh/linalg.hpp"
#include "msh/polynomial.hpp"

using namespace msh;

namespace {

RationalMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(num(rng), den(rng));
  return m;
}

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RationalMatrix m = random_matrix(n, n + n / 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(m.rref());
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(8, 32);

void BM_KernelBasis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RationalMatrix m = random_matrix(n / 2, n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}
BENCHMARK(BM_KernelBasis)->RangeMultiplier(2)->Range(8, 32);

void BM_SolverReuse(benchmark::State& state) {
  const RationalMatrix a = random_matrix(32, 32, 3);
  const LinearSolver solver(a);
  const Vector b = random_matrix(32, 1, 5).column(0);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(b));
}
BENCHMARK(BM_SolverReuse);

// Determinant of a matrix of linear forms in three variables.
void BM_PolynomialDeterminant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (auto& row : m)
    for (auto& p : row)
      for (int v = 0; v < 3; ++v) p = p + Polynomial::variable(v) * Rational(coef(rng));
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}
BENCHMARK(BM_PolynomialDeterminant)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
