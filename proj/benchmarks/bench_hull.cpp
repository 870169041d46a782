#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "onion/geometry.hpp"

namespace {

std::vector<onion::Point2> disk(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<onion::Point2> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y <= 1.0) pts.push_back({x, y});
  }
  return pts;
}

void BM_ConvexHull(benchmark::State& state) {
  const auto pts = disk(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(onion::convex_hull(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvexHull)->RangeMultiplier(2)->Range(1 << 10, 1 << 17)->Complexity(benchmark::oNLogN);

void BM_OnionPeel(benchmark::State& state) {
  const auto pts = disk(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(onion::onion_peel(pts));
}
BENCHMARK(BM_OnionPeel)->Arg(1000)->Arg(4000);

}  // namespace
