#include <benchmark/benchmark.h>

#include <random>

#include "rpcirc/rpfunc.hpp"

namespace {

using namespace rpcirc;

AtomicOperatorMeasure random_measure(Index d, int atoms, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> loc(0.0, 4.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Atom> list;
  for (int a = 0; a < atoms; ++a) {
    ComplexMatrix b(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
    list.push_back(Atom{loc(rng), hermitize(b.adjoint() * b)});
  }
  return AtomicOperatorMeasure(d, std::move(list));
}

void BM_OsKernelCertificate(benchmark::State& state) {
  const CircleRPFunction phi(CircleParameter(1.0), MeasureBacked{random_measure(2, 4, 3)});
  const RealVector grid = default_verification_grid(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd_certificate(os_kernel(phi, grid)));
  }
}
BENCHMARK(BM_OsKernelCertificate)->Arg(10)->Arg(20)->Arg(40);

void BM_BochnerCertificate(benchmark::State& state) {
  const CircleRPFunction phi(CircleParameter(1.0), MeasureBacked{random_measure(2, 4, 5)});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::vector<ComplexMatrix> samples;
    samples.reserve(n);
    for (int k = 0; k < n; ++k) samples.push_back(eval(phi, static_cast<double>(k) / n));
    benchmark::DoNotOptimize(bochner_coefficients(samples));
  }
}
BENCHMARK(BM_BochnerCertificate)->Arg(128)->Arg(256);

void BM_FitMeasureScalar(benchmark::State& state) {
  const CircleRPFunction phi = basic_flambda(1.0, CircleParameter(1.0));
  const int m = 30;
  RealVector times(m);
  std::vector<ComplexMatrix> values;
  for (int j = 0; j < m; ++j) {
    times[j] = static_cast<double>(j) / (m - 1);
    values.push_back(eval(phi, times[j]));
  }
  RealVector grid(5);
  grid << 0.0, 0.5, 1.0, 2.0, 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_measure(times, values, grid, CircleParameter(1.0)));
  }
}
BENCHMARK(BM_FitMeasureScalar);

}  // namespace
