#include <benchmark/benchmark.h>

#include "grassphase/grassmann.hpp"
#include "grassphase/holonomy.hpp"
#include "grassphase/mat_core.hpp"
#include "grassphase/random.hpp"

namespace {

using namespace gphase;

void BM_HermEig(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Svd(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_gaussian_matrix(n, n + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(a));
}
BENCHMARK(BM_Svd)->Arg(2)->Arg(4)->Arg(8);

void BM_OverlapKernel(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const GrassmannPoint p = random_point(n, n, rng);
  const GrassmannPoint q = random_point(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(overlap_kernel(p, q));
}
BENCHMARK(BM_OverlapKernel)->Arg(1)->Arg(2)->Arg(4);

void BM_GeodesicBetween(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const GrassmannPoint p = random_point(n, n, rng);
  const GrassmannPoint q = random_point(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_between(p, q));
}
BENCHMARK(BM_GeodesicBetween)->Arg(1)->Arg(2)->Arg(4);

void BM_FanArea(benchmark::State& state) {
  Rng rng(5);
  const GrassmannPoint x = random_point(2, 2, rng);
  const GrassmannPoint y = random_point(2, 2, rng);
  const GrassmannPoint z = random_point(2, 2, rng);
  QuadratureSpec spec;
  spec.order = static_cast<int>(state.range(0));
  const FanSurface fan = fan_surface(x, y, z);
  for (auto _ : state) benchmark::DoNotOptimize(fan_area(fan, spec));
}
BENCHMARK(BM_FanArea)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
