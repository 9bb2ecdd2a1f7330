#include "trajanom/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_map>

#include "trajanom/error.hpp"

namespace trajanom {

std::string_view to_string(Archetype a) noexcept {
  switch (a) {
    case Archetype::CounterFlow: return "counter_flow";
    case Archetype::ErraticSpeed: return "erratic_speed";
    case Archetype::OffLane: return "off_lane";
    case Archetype::Loiter: return "loiter";
  }
  return "unknown";
}

std::optional<Archetype> archetype_from_string(std::string_view name) noexcept {
  for (auto a : {Archetype::CounterFlow, Archetype::ErraticSpeed, Archetype::OffLane, Archetype::Loiter}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

SynthConfig SynthConfig::benchmark_default() {
  SynthConfig cfg;
  cfg.lanes = {
      LaneSpec{{10.0, 25.0}, {1.0, 0.0}, 80.0, 3.0, 1.4, 0.1, 50},
      LaneSpec{{75.0, 10.0}, {0.0, 1.0}, 80.0, 3.0, 1.4, 0.1, 50},
      LaneSpec{{20.0, 85.0}, {1.0, -1.0}, 70.0, 3.0, 1.4, 0.1, 50},
  };
  cfg.anomalies = {
      AnomalySpec{Archetype::CounterFlow, 2},
      AnomalySpec{Archetype::ErraticSpeed, 1},
      AnomalySpec{Archetype::OffLane, 1},
      AnomalySpec{Archetype::Loiter, 1},
  };
  cfg.noise_std = 0.01 * cfg.width;
  return cfg;
}

void SynthConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::InvalidConfig, what); };
  if (lanes.empty()) fail("at least one lane is required");
  if (!(width > 0.0) || !(height > 0.0)) fail("scene width and height must be positive");
  if (!(noise_std >= 0.0)) fail("noise_std must be >= 0");
  if (!(duration > 0.0) || !(sample_rate > 0.0)) fail("duration and sample_rate must be positive");
  if (seeds == 0) fail("seeds must be >= 1");
  std::size_t total = 0;
  for (const auto& lane : lanes) {
    if (std::hypot(lane.direction.x, lane.direction.y) == 0.0) fail("lane direction must be non-zero");
    if (!(lane.length > 0.0) || !(lane.half_width >= 0.0)) fail("lane length/half_width invalid");
    if (!(lane.speed_mean > 0.0) || !(lane.speed_std >= 0.0)) fail("lane speed invalid");
    // Slowest plausible walker must still produce enough samples within the scene.
    const double lifespan = std::min(lane.length / lane.speed_mean, duration);
    if (lifespan * sample_rate < 8.0) fail("lane lifespan too short for 8 samples");
    total += lane.count;
  }
  for (const auto& a : anomalies) total += a.count;
  if (total < 2) fail("scene needs at least 2 trajectories");
}

namespace {

Point2 unit(Point2 v) {
  const double n = std::hypot(v.x, v.y);
  return {v.x / n, v.y / n};
}

struct Generator {
  const SynthConfig& cfg;
  std::mt19937_64 rng;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double normal(double mean, double sd) {
    return sd > 0.0 ? std::normal_distribution<double>(mean, sd)(rng) : mean;
  }

  double lane_speed(const LaneSpec& lane) {
    return std::max(0.2 * lane.speed_mean, normal(lane.speed_mean, lane.speed_std));
  }

  // Entry time chosen so the whole lifespan fits in the scene duration.
  double entry_time(double lifespan) { return uniform(0.0, std::max(0.0, cfg.duration - lifespan)); }

  template <class PathFn>
  std::vector<Sample> sample_path(double t0, double lifespan, PathFn&& path) {
    const double dt = 1.0 / cfg.sample_rate;
    const auto n = std::max<std::size_t>(8, static_cast<std::size_t>(std::floor(lifespan * cfg.sample_rate)) + 1);
    std::vector<Sample> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double tau = static_cast<double>(k) * dt;
      const Point2 p = path(tau);
      out.push_back(Sample{t0 + tau, p.x + normal(0.0, cfg.noise_std), p.y + normal(0.0, cfg.noise_std)});
    }
    return out;
  }

  std::vector<Sample> lane_walker(const LaneSpec& lane) {
    const Point2 dir = unit(lane.direction);
    const Point2 perp{-dir.y, dir.x};
    const double offset = uniform(-lane.half_width, lane.half_width);
    const double v = lane_speed(lane);
    const double lifespan = std::min(lane.length / v, cfg.duration);
    const Point2 origin{lane.start.x + offset * perp.x, lane.start.y + offset * perp.y};
    return sample_path(entry_time(lifespan), lifespan, [&](double tau) {
      return Point2{origin.x + dir.x * v * tau, origin.y + dir.y * v * tau};
    });
  }

  // Walks against the lane from its far end. Pushing through oncoming
  // traffic halves the walker's speed, so over the nominal lane lifespan it
  // only covers half the corridor.
  std::vector<Sample> counter_flow(const LaneSpec& lane) {
    const Point2 dir = unit(lane.direction);
    const Point2 perp{-dir.y, dir.x};
    const double offset = uniform(-lane.half_width, lane.half_width);
    const double v = 0.5 * lane_speed(lane);
    const double lifespan = std::min(lane.length / lane.speed_mean, cfg.duration);
    const Point2 origin{lane.start.x + dir.x * lane.length + offset * perp.x,
                        lane.start.y + dir.y * lane.length + offset * perp.y};
    return sample_path(entry_time(lifespan), lifespan, [&](double tau) {
      return Point2{origin.x - dir.x * v * tau, origin.y - dir.y * v * tau};
    });
  }

  // Alternates between 0.2x and 3x the lane mean speed in phases of 3-8 s,
  // for the nominal lane lifespan.
  std::vector<Sample> erratic_speed(const LaneSpec& lane) {
    const Point2 dir = unit(lane.direction);
    const Point2 perp{-dir.y, dir.x};
    const double offset = uniform(-lane.half_width, lane.half_width);
    const double lifespan = std::min(lane.length / lane.speed_mean, cfg.duration);
    bool fast = uniform(0.0, 1.0) < 0.5;
    std::vector<std::pair<double, double>> phases;  // (end time, speed)
    for (double t = 0.0; t <= lifespan;) {
      t += uniform(3.0, 8.0);
      phases.emplace_back(t, (fast ? 3.0 : 0.2) * lane.speed_mean);
      fast = !fast;
    }
    const Point2 origin{lane.start.x + offset * perp.x, lane.start.y + offset * perp.y};
    return sample_path(entry_time(lifespan), lifespan, [&](double tau) {
      double travelled = 0.0;
      double begin = 0.0;
      for (const auto& [end, speed] : phases) {
        const double stop = std::min(end, tau);
        travelled += speed * (stop - begin);
        if (end >= tau) break;
        begin = end;
      }
      return Point2{origin.x + dir.x * travelled, origin.y + dir.y * travelled};
    });
  }

  // Three-quarter circular sweep around the scene centre, cutting across lanes.
  std::vector<Sample> off_lane(const LaneSpec& lane) {
    const double lifespan = std::min(lane.length / lane.speed_mean, cfg.duration);
    const double radius = 0.3 * std::min(cfg.width, cfg.height);
    const Point2 centre{0.5 * cfg.width + uniform(-0.05, 0.05) * cfg.width,
                        0.5 * cfg.height + uniform(-0.05, 0.05) * cfg.height};
    const double phase = uniform(0.0, 2.0 * std::numbers::pi);
    const double sweep = (uniform(0.0, 1.0) < 0.5 ? 1.0 : -1.0) * 1.5 * std::numbers::pi;
    return sample_path(entry_time(lifespan), lifespan, [&](double tau) {
      const double a = phase + sweep * tau / lifespan;
      return Point2{centre.x + radius * std::cos(a), centre.y + radius * std::sin(a)};
    });
  }

  std::vector<Sample> loiter(const LaneSpec& lane) {
    const double lifespan = std::min(lane.length / lane.speed_mean, cfg.duration);
    const Point2 spot{uniform(0.2, 0.8) * cfg.width, uniform(0.2, 0.8) * cfg.height};
    const double heading = uniform(0.0, 2.0 * std::numbers::pi);
    const double drift = 0.02 * lane.speed_mean;
    return sample_path(entry_time(lifespan), lifespan, [&](double tau) {
      return Point2{spot.x + drift * tau * std::cos(heading), spot.y + drift * tau * std::sin(heading)};
    });
  }
};

}  // namespace

LabeledScene generate_scene(const SynthConfig& cfg) {
  cfg.validate();
  Generator gen{cfg, std::mt19937_64(cfg.seed)};

  struct Pending {
    std::vector<Sample> samples;
    std::size_t lane;
    std::optional<Archetype> archetype;
  };
  std::vector<Pending> pending;
  for (std::size_t l = 0; l < cfg.lanes.size(); ++l) {
    for (std::size_t i = 0; i < cfg.lanes[l].count; ++i) {
      pending.push_back({gen.lane_walker(cfg.lanes[l]), l, std::nullopt});
    }
  }
  std::size_t planted = 0;
  for (const auto& spec : cfg.anomalies) {
    for (std::size_t i = 0; i < spec.count; ++i, ++planted) {
      const std::size_t l = planted % cfg.lanes.size();
      const auto& lane = cfg.lanes[l];
      std::vector<Sample> samples;
      switch (spec.archetype) {
        case Archetype::CounterFlow: samples = gen.counter_flow(lane); break;
        case Archetype::ErraticSpeed: samples = gen.erratic_speed(lane); break;
        case Archetype::OffLane: samples = gen.off_lane(lane); break;
        case Archetype::Loiter: samples = gen.loiter(lane); break;
      }
      pending.push_back({std::move(samples), l, spec.archetype});
    }
  }
  std::shuffle(pending.begin(), pending.end(), gen.rng);

  std::vector<Trajectory> trajectories;
  GroundTruth truth;
  std::vector<std::size_t> lane_of;
  std::vector<std::optional<Archetype>> archetype_of;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto id = std::to_string(i);
    trajectories.push_back(Trajectory{id, std::move(pending[i].samples)});
    truth.ids.push_back(std::move(id));
    truth.labels.push_back(pending[i].archetype ? 1 : 0);
    lane_of.push_back(pending[i].lane);
    archetype_of.push_back(pending[i].archetype);
  }
  return LabeledScene{Scene(std::move(trajectories)), std::move(truth), std::move(lane_of),
                      std::move(archetype_of)};
}

std::string write_labels(const GroundTruth& truth) {
  std::string out = "id,label\n";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    out += truth.ids[i];
    out += ',';
    out += truth.labels[i] ? '1' : '0';
    out += '\n';
  }
  return out;
}

GroundTruth parse_labels(std::string_view text) {
  GroundTruth truth;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty()) continue;
    if (truth.ids.empty() && line == "id,label") continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || comma == 0) {
      throw Error(Errc::MalformedRow, "expected id,label", line_no);
    }
    const auto label = line.substr(comma + 1);
    if (label != "0" && label != "1") throw Error(Errc::MalformedRow, "label must be 0 or 1", line_no);
    truth.ids.emplace_back(line.substr(0, comma));
    truth.labels.push_back(label == "1" ? 1 : 0);
  }
  if (truth.ids.empty()) throw Error(Errc::EmptyInput, "no label rows");
  return truth;
}

Metrics evaluate(const std::vector<std::string>& predicted, const GroundTruth& truth) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!index.emplace(truth.ids[i], i).second) {
      throw Error(Errc::IdMismatch, "duplicate ground-truth id '" + truth.ids[i] + "'");
    }
  }
  std::vector<bool> flagged(truth.size(), false);
  for (const auto& id : predicted) {
    const auto it = index.find(id);
    if (it == index.end()) throw Error(Errc::IdMismatch, "predicted id '" + id + "' not in ground truth");
    flagged[it->second] = true;
  }
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth.labels[i] != 0;
    if (flagged[i] && actual) ++m.tp;
    else if (flagged[i]) ++m.fp;
    else if (actual) ++m.fn;
    else ++m.tn;
  }
  const auto ratio = [](std::size_t num, std::size_t den, double empty) {
    return den == 0 ? empty : static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(m.tp, m.tp + m.fp, 1.0);
  m.recall = ratio(m.tp, m.tp + m.fn, 1.0);
  m.f_score = m.precision + m.recall > 0.0
                  ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                  : 0.0;
  m.accuracy = ratio(m.tp + m.tn, truth.size(), 1.0);
  return m;
}

namespace {

MetricAggregate aggregate(const std::vector<SeedRun>& runs, double Metrics::*field) {
  MetricAggregate a;
  if (runs.empty()) return a;
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) a.mean += r.metrics.*field;
  a.mean /= n;
  double var = 0.0;
  for (const auto& r : runs) var += (r.metrics.*field - a.mean) * (r.metrics.*field - a.mean);
  a.stddev = std::sqrt(var / n);
  return a;
}

}  // namespace

BenchSummary run_benchmark(const SynthConfig& synth, const DetectorConfig& detector) {
  synth.validate();
  detector.validate();
  BenchSummary summary;
  for (std::size_t s = 0; s < synth.seeds; ++s) {
    SynthConfig cfg = synth;
    cfg.seed = synth.seed + s;
    const auto labeled = generate_scene(cfg);
    const auto report = detect(labeled.scene, detector);
    summary.runs.push_back(SeedRun{cfg.seed, evaluate(report.anomalies, labeled.truth),
                                   labeled.scene.size(), report.anomalies.size()});
  }
  summary.precision = aggregate(summary.runs, &Metrics::precision);
  summary.recall = aggregate(summary.runs, &Metrics::recall);
  summary.f_score = aggregate(summary.runs, &Metrics::f_score);
  summary.accuracy = aggregate(summary.runs, &Metrics::accuracy);
  return summary;
}

}  // namespace trajanom
