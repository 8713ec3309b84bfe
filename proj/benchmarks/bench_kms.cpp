#include <benchmark/benchmark.h>

#include <random>

#include "rpcirc/kms.hpp"

namespace {

using namespace rpcirc;

GibbsSystem make_system(Index n) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix h(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
  return GibbsSystem(hermitize(h), 1.0);
}

void BM_KmsResidual(benchmark::State& state) {
  const GibbsSystem sys = make_system(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix a(sys.n(), sys.n()), b(sys.n(), sys.n());
  for (Index i = 0; i < sys.n(); ++i)
    for (Index j = 0; j < sys.n(); ++j) {
      a(i, j) = Complex(gauss(rng), gauss(rng));
      b(i, j) = Complex(gauss(rng), gauss(rng));
    }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kms_residual(sys, a, b, 0.8));
  }
}
BENCHMARK(BM_KmsResidual)->Arg(2)->Arg(4)->Arg(8);

void BM_TomitaFromGibbs(benchmark::State& state) {
  const GibbsSystem sys = make_system(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tomita_from_gibbs(sys, 5));
  }
}
BENCHMARK(BM_TomitaFromGibbs)->Arg(2)->Arg(3);

void BM_PsiBlockKernel(benchmark::State& state) {
  const GibbsSystem sys = make_system(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_matrix(sys, Complex(0.7, 0.3)));
  }
}
BENCHMARK(BM_PsiBlockKernel)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
