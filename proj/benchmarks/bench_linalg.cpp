#include <benchmark/benchmark.h>

#include <random>

#include "rpcirc/linalg.hpp"

namespace {

using namespace rpcirc;

ComplexMatrix random_hermitian(Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return hermitize(m);
}

void BM_EigHermitian(benchmark::State& state) {
  const ComplexMatrix m = random_hermitian(state.range(0), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(m));
  }
}
BENCHMARK(BM_EigHermitian)->Arg(16)->Arg(64)->Arg(128);

void BM_MatrixExponential(benchmark::State& state) {
  const SpectralDecomposition s = eig_hermitian(random_hermitian(state.range(0), 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_function(s, exp_scaled(0.5)));
  }
}
BENCHMARK(BM_MatrixExponential)->Arg(16)->Arg(64)->Arg(128);

void BM_GramQuotient(benchmark::State& state) {
  const Index n = state.range(0);
  ComplexMatrix b = random_hermitian(n, 11);
  const ComplexMatrix g = hermitize(b.adjoint() * b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_quotient(g));
  }
}
BENCHMARK(BM_GramQuotient)->Arg(16)->Arg(64)->Arg(128);

}  // namespace
