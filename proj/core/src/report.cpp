#include "trajanom/report.hpp"

namespace trajanom {

ordered_json to_json(const DetectorConfig& cfg) {
  ordered_json j;
  j["model"]["min_samples"] = cfg.model.min_samples;
  j["features"]["epsilon_fractions"] = cfg.features.epsilon_fractions;
  j["features"]["resample_count"] = cfg.features.resample_count;
  auto& c = j["cluster"];
  c["kernel"] = to_string(cfg.cluster.kernel.profile);
  c["bandwidth_factor"] = cfg.cluster.bandwidth_factor;
  c["bandwidth"] = cfg.cluster.bandwidth ? ordered_json(*cfg.cluster.bandwidth) : ordered_json(nullptr);
  c["max_iterations"] = cfg.cluster.max_iterations;
  c["convergence_tol"] = cfg.cluster.convergence_tol;
  c["merge_radius_factor"] = cfg.cluster.merge_radius_factor;
  j["detector"]["kappa"] = cfg.kappa;
  j["detector"]["threshold_quantile"] =
      cfg.threshold_quantile ? ordered_json(*cfg.threshold_quantile) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const SynthConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  j["seeds"] = cfg.seeds;
  j["width"] = cfg.width;
  j["height"] = cfg.height;
  j["noise_std"] = cfg.noise_std;
  j["duration"] = cfg.duration;
  j["sample_rate"] = cfg.sample_rate;
  j["lanes"] = ordered_json::array();
  for (const auto& l : cfg.lanes) {
    ordered_json lane;
    lane["start"] = {l.start.x, l.start.y};
    lane["direction"] = {l.direction.x, l.direction.y};
    lane["length"] = l.length;
    lane["half_width"] = l.half_width;
    lane["speed_mean"] = l.speed_mean;
    lane["speed_std"] = l.speed_std;
    lane["count"] = l.count;
    j["lanes"].push_back(std::move(lane));
  }
  j["anomalies"] = ordered_json::array();
  for (const auto& a : cfg.anomalies) {
    j["anomalies"].push_back(ordered_json{{"archetype", to_string(a.archetype)}, {"count", a.count}});
  }
  return j;
}

ordered_json to_json(const Metrics& m) {
  ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f_score"] = m.f_score;
  j["accuracy"] = m.accuracy;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["fn"] = m.fn;
  j["tn"] = m.tn;
  return j;
}

ordered_json to_json(const AnomalyReport& report) {
  ordered_json j;
  j["scene_digest"] = report.scene_digest;
  j["config"] = to_json(report.config);
  j["trajectory_ids"] = report.trajectory_ids;
  j["per_space"] = ordered_json::array();
  for (const auto& s : report.spaces) {
    ordered_json e;
    e["space"] = to_string(s.space);
    e["k"] = s.model.k();
    e["abstained"] = s.entropy.abstained;
    e["degenerate"] = s.model.degenerate;
    e["bandwidth"] = s.model.bandwidth;
    e["centers"] = ordered_json::array();
    for (Eigen::Index r = 0; r < s.model.centers.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < s.model.centers.cols(); ++c) row.push_back(s.model.centers(r, c));
      e["centers"].push_back(std::move(row));
    }
    e["assignments"] = s.model.assignments;
    e["H"] = s.entropy.values;
    e["thresh"] = s.threshold ? ordered_json(*s.threshold) : ordered_json(nullptr);
    e["flags"] = ordered_json::array();
    for (bool f : s.flags) e["flags"].push_back(f);
    j["per_space"].push_back(std::move(e));
  }
  j["votes"] = report.votes;
  j["n_voting"] = report.n_voting;
  j["anomalies"] = report.anomalies;
  j["warnings"] = report.warnings;
  return j;
}

namespace {

ordered_json to_json(const MetricAggregate& a) {
  return ordered_json{{"mean", a.mean}, {"std", a.stddev}};
}

}  // namespace

ordered_json to_json(const BenchSummary& summary) {
  ordered_json j;
  j["runs"] = ordered_json::array();
  for (const auto& r : summary.runs) {
    ordered_json row;
    row["seed"] = r.seed;
    row["trajectories"] = r.trajectories;
    row["predicted"] = r.predicted;
    row["metrics"] = to_json(r.metrics);
    j["runs"].push_back(std::move(row));
  }
  auto& agg = j["aggregate"];
  agg["precision"] = to_json(summary.precision);
  agg["recall"] = to_json(summary.recall);
  agg["f_score"] = to_json(summary.f_score);
  agg["accuracy"] = to_json(summary.accuracy);
  return j;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace trajanom
