#include <benchmark/benchmark.h>

#include "onion/datagen.hpp"
#include "onion/detector.hpp"

namespace {

void BM_Detect(benchmark::State& state) {
  onion::GenSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  const auto ds = onion::generate(spec);
  onion::DetectionConfig config;
  config.k = static_cast<std::size_t>(state.range(1));
  config.metric = onion::MetricKind::Mahalanobis;
  for (auto _ : state) benchmark::DoNotOptimize(onion::detect(ds.points, config));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Detect)
    ->ArgsProduct({{1500, 10000, 100000}, {15}})
    ->Unit(benchmark::kMillisecond);

void BM_DetectCenterScoring(benchmark::State& state) {
  onion::GenSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  const auto ds = onion::generate(spec);
  onion::DetectionConfig config;
  config.k = 15;
  config.scoring = onion::Scoring::DistanceToCenter;
  for (auto _ : state) benchmark::DoNotOptimize(onion::detect(ds.points, config));
}
BENCHMARK(BM_DetectCenterScoring)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
