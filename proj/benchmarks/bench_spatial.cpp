#include <benchmark/benchmark.h>

#include <cmath>

#include "spatk/grid_index.hpp"
#include "spatk/k_function.hpp"
#include "spatk/k_vector.hpp"
#include "spatk/point_pattern.hpp"
#include "spatk/random.hpp"

namespace {

using namespace spatk;

PointPattern make_pattern(std::size_t n, double side) {
  return simulate_uniform_pattern({0, 0, side, side}, {n / 3, n / 3, n - 2 * (n / 3)}, 7);
}

void BM_BuildIndex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointPattern p = make_pattern(n, 1000.0);
  for (auto _ : state) {
    GridIndex index(p, 90.0);
    benchmark::DoNotOptimize(index.bucket_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(2'000)->Arg(20'000)->Arg(100'000);

void BM_CountInDisk(benchmark::State& state) {
  const PointPattern p = make_pattern(20'000, 1000.0);
  const GridIndex index(p, 90.0);
  Rng rng(13);
  std::size_t q = 0;
  for (auto _ : state) {
    const Point center{rng.uniform(0, 1000), rng.uniform(0, 1000)};
    benchmark::DoNotOptimize(index.count_in_disk(center, 90.0, static_cast<int>(q++ % 3)));
  }
}
BENCHMARK(BM_CountInDisk);

void BM_KVectorField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  // Density matched to the acceptance pattern: 1 point per 1000 px^2.
  const double side = std::sqrt(static_cast<double>(n) * 1000.0);
  const PointPattern p = make_pattern(n, side);
  const RadiiGrid radii = RadiiGrid::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_vector_field(p, radii, 180.0, 100.0, workers));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KVectorField)
    ->Args({2'000, 1})
    ->Args({20'000, 1})
    ->Args({20'000, 4})
    ->Args({100'000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_RipleyK(benchmark::State& state) {
  const PointPattern p = make_pattern(static_cast<std::size_t>(state.range(0)), 1000.0);
  const RadiiGrid radii = RadiiGrid::defaults();
  const auto correction =
      state.range(1) == 0 ? Correction::kNone : Correction::kBorder;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ripley_k(p, 0, 1, radii, correction));
  }
}
BENCHMARK(BM_RipleyK)->Args({2'000, 0})->Args({2'000, 1})->Unit(benchmark::kMillisecond);

void BM_CsrEnvelope(benchmark::State& state) {
  const PointPattern p = make_pattern(2'000, 1000.0);
  const RadiiGrid radii = RadiiGrid::defaults();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csr_envelope(p, 0, 0, radii, 99, 3, 11, Correction::kNone,
                                          workers));
  }
}
BENCHMARK(BM_CsrEnvelope)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
