#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajanom/detector.hpp"
#include "trajanom/trajmodel.hpp"

namespace trajanom {

enum class Archetype { CounterFlow, ErraticSpeed, OffLane, Loiter };

std::string_view to_string(Archetype a) noexcept;
std::optional<Archetype> archetype_from_string(std::string_view name) noexcept;

/// A corridor of normal traffic. Walkers enter within `half_width` of
/// `start` (measured across the lane), head along `direction` and cover
/// `length` scene units at a speed drawn from N(speed_mean, speed_std).
struct LaneSpec {
  Point2 start;
  Point2 direction;  // normalized on use
  double length = 80.0;
  double half_width = 3.0;
  double speed_mean = 1.4;
  double speed_std = 0.1;
  std::size_t count = 50;
};

struct AnomalySpec {
  Archetype archetype = Archetype::CounterFlow;
  std::size_t count = 1;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  /// Benchmark runs use seeds seed, seed + 1, ..., seed + seeds - 1.
  std::size_t seeds = 20;
  double width = 100.0;
  double height = 100.0;
  std::vector<LaneSpec> lanes;
  std::vector<AnomalySpec> anomalies;
  double noise_std = 1.0;
  double duration = 120.0;
  double sample_rate = 2.0;

  /// 3 lanes x 50 walkers, 2 counter-flow, 1 erratic, 1 off-lane, 1 loiter,
  /// jitter at 1% of the scene width.
  static SynthConfig benchmark_default();

  void validate() const;
};

struct GroundTruth {
  std::vector<std::string> ids;  // scene order
  std::vector<int> labels;       // 1 = anomalous

  std::size_t size() const noexcept { return ids.size(); }
};

struct LabeledScene {
  Scene scene;
  GroundTruth truth;
  /// Lane index every trajectory was generated from (anomalies included).
  std::vector<std::size_t> lane_of;
  /// Archetype of each trajectory, empty for normal lane traffic.
  std::vector<std::optional<Archetype>> archetype_of;
};

/// Deterministic per seed. Trajectory ids are "0", "1", ... assigned after a
/// seeded shuffle, so id order carries no label information.
LabeledScene generate_scene(const SynthConfig& cfg);

std::string write_labels(const GroundTruth& truth);
GroundTruth parse_labels(std::string_view text);

struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_score = 0.0;
  double accuracy = 1.0;
};

/// Confusion counts over every trajectory in `truth`. Empty denominators:
/// precision = 1 when TP + FP = 0, recall = 1 when TP + FN = 0, f = 0 when
/// P + R = 0. Throws IdMismatch for predicted ids absent from `truth`.
Metrics evaluate(const std::vector<std::string>& predicted, const GroundTruth& truth);

struct SeedRun {
  std::uint64_t seed = 0;
  Metrics metrics;
  std::size_t trajectories = 0;
  std::size_t predicted = 0;
};

struct MetricAggregate {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct BenchSummary {
  std::vector<SeedRun> runs;  // seed order
  MetricAggregate precision;
  MetricAggregate recall;
  MetricAggregate f_score;
  MetricAggregate accuracy;
};

/// generate -> detect -> evaluate for every configured seed.
BenchSummary run_benchmark(const SynthConfig& synth, const DetectorConfig& detector);

}  // namespace trajanom
