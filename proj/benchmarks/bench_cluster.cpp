#include <benchmark/benchmark.h>

#include "spatk/kmeans.hpp"
#include "spatk/random.hpp"

namespace {

using namespace spatk;

FeatureTable make_features(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> cells(n);
  std::vector<int> labels(n);
  std::vector<double> values(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = static_cast<std::int64_t>(i);
    labels[i] = static_cast<int>(i % 3);
    for (std::size_t d = 0; d < dim; ++d) values[i * dim + d] = rng.next_double();
  }
  return FeatureTable(std::move(cells), std::move(labels), std::move(values), dim, 3);
}

void BM_KMeansFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FeatureTable table = make_features(n, 18, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans_fit(table, 0, 5, std::nullopt, 9));
  }
}
BENCHMARK(BM_KMeansFit)->Arg(3'000)->Arg(30'000)->Unit(benchmark::kMillisecond);

void BM_UpdatePseudoLabels(benchmark::State& state) {
  const FeatureTable table = make_features(static_cast<std::size_t>(state.range(0)), 18, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(update_pseudo_labels(table, std::nullopt, 5, 9));
  }
}
BENCHMARK(BM_UpdatePseudoLabels)->Arg(3'000)->Arg(30'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
