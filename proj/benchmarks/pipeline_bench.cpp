#include <benchmark/benchmark.h>

#include <random>

#include "trajanom/detector.hpp"
#include "trajanom/features.hpp"
#include "trajanom/harness.hpp"
#include "trajanom/meanshift.hpp"

using namespace trajanom;

namespace {

Scene scene_with(std::size_t per_lane) {
  auto cfg = SynthConfig::benchmark_default();
  for (auto& lane : cfg.lanes) lane.count = per_lane;
  return generate_scene(cfg).scene;
}

void BM_GenerateScene(benchmark::State& state) {
  const auto cfg = SynthConfig::benchmark_default();
  for (auto _ : state) benchmark::DoNotOptimize(generate_scene(cfg));
}
BENCHMARK(BM_GenerateScene);

void BM_DistanceMatrix(benchmark::State& state) {
  const auto scene = scene_with(static_cast<std::size_t>(state.range(0)));
  const auto resampled = resample_all(scene, 32);
  for (auto _ : state) benchmark::DoNotOptimize(st_distance_matrix(resampled));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(scene.size()));
}
BENCHMARK(BM_DistanceMatrix)->RangeMultiplier(2)->Range(25, 200)->Complexity(benchmark::oNSquared);

void BM_FeatureMatrices(benchmark::State& state) {
  const auto scene = scene_with(50);
  for (auto _ : state) benchmark::DoNotOptimize(build_feature_matrices(scene, FeatureConfig{}));
}
BENCHMARK(BM_FeatureMatrices);

void BM_MeanShift(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 1);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto dim = static_cast<Eigen::Index>(state.range(1));
  FeatureMatrix m{FeatureSpace::Shape, Eigen::MatrixXd(n, dim), std::nullopt};
  for (Eigen::Index i = 0; i < m.rows.size(); ++i) m.rows.data()[i] = g(rng) + (i % 3) * 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(mean_shift_cluster(m, ClusterConfig{}));
}
BENCHMARK(BM_MeanShift)->Args({155, 2})->Args({155, 8})->Args({400, 8})->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
  const auto scene = scene_with(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(detect(scene, DetectorConfig{}));
}
BENCHMARK(BM_Detect)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
