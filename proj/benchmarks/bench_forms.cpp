#include <benchmark/benchmark.h>

#include "hodge/hodge_curvature.hpp"
#include "hodge/segre_chern.hpp"
#include "hodge/symmap.hpp"

using namespace hodge;

namespace {

// Forms are truncated at degree 6, the cap the c~_3 computations use.

SiegelPoint point(int g) {
  SplitMix64 rng(derive_seed(99, static_cast<std::uint64_t>(g)));
  return random_siegel_point(g, rng);
}

void BM_Wedge(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const CurvaturePackage pkg = curvature_package(point(g));
  const ExtForm c = chern_total(pkg, Bundle::DualHodge, 6);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(c, c, 6));
}
BENCHMARK(BM_Wedge)->DenseRange(1, 3);

void BM_InverseEven(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const CurvaturePackage pkg = curvature_package(point(g));
  const ExtForm c = chern_total(pkg, Bundle::DualHodge, 6);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_even(c, 6));
}
BENCHMARK(BM_InverseEven)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_SegreInverse(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const CurvaturePackage pkg = curvature_package(point(g));
  for (auto _ : state) benchmark::DoNotOptimize(segre_by_inverse(pkg, g));
}
BENCHMARK(BM_SegreInverse)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SegreMoments(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const CurvaturePackage pkg = curvature_package(point(g));
  for (auto _ : state) benchmark::DoNotOptimize(segre_by_moments(pkg, g));
}
BENCHMARK(BM_SegreMoments)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& state) {
  const CurvaturePackage pkg = curvature_package(point(2));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(segre_by_quadrature(pkg, k, 10000, 1, 1));
}
BENCHMARK(BM_Quadrature)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_WperpWitnessSearch(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wperp_witness_suite(g, 3, 10, 5));
}
BENCHMARK(BM_WperpWitnessSearch)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
