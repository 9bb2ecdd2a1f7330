#include "trajanom/detector.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "trajanom/error.hpp"

namespace trajanom {

void DetectorConfig::validate() const {
  model.validate();
  features.validate();
  cluster.validate();
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw Error(Errc::InvalidConfig, "kappa must be >= 0");
  if (threshold_quantile && !(*threshold_quantile >= 0.0 && *threshold_quantile <= 1.0)) {
    throw Error(Errc::InvalidConfig, "threshold_quantile must lie in [0, 1]");
  }
}

std::vector<double> distance_to_centers(const Eigen::VectorXd& point, const Eigen::MatrixXd& centers) {
  if (centers.rows() == 0) throw Error(Errc::DimensionMismatch, "no centers");
  if (centers.cols() != point.size()) {
    throw Error(Errc::DimensionMismatch, "point has dimension " + std::to_string(point.size()) +
                                             ", centers " + std::to_string(centers.cols()));
  }
  std::vector<double> out(static_cast<std::size_t>(centers.rows()));
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    out[static_cast<std::size_t>(c)] = (centers.row(c).transpose() - point).norm();
  }
  return out;
}

double entropy_score(std::span<const double> distances) {
  const std::size_t k = distances.size();
  if (k < 2) throw Error(Errc::SingleCluster, "entropy needs at least 2 centers");
  double total = 0.0;
  for (double d : distances) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw Error(Errc::DimensionMismatch, "invalid distance");
    total += d;
  }
  if (!(total > 0.0)) throw Error(Errc::AllZeroDistances, "every center distance is zero");

  double h = 0.0;
  for (double d : distances) {
    const double p = d / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  h /= std::log(static_cast<double>(k));
  return std::clamp(h, 0.0, 1.0);
}

double adaptive_threshold(const EntropyVector& h, double kappa) {
  const auto& v = h.values;
  if (v.empty()) return 1.0;
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / n);
  return std::min(1.0, mean + kappa * sd);
}

double quantile_threshold(const EntropyVector& h, double q) {
  if (h.values.empty()) return 1.0;
  std::vector<double> v = h.values;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

FlagRow feature_anomalies(const EntropyVector& h, double thresh) {
  FlagRow flags(h.values.size(), false);
  if (h.abstained) return flags;
  for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = h.values[i] > thresh;
  return flags;
}

VoteResult vote(std::span<const FlagRow> flags, std::size_t n_trajectories) {
  VoteResult out;
  out.votes.assign(n_trajectories, 0);
  out.n_voting = flags.size();
  if (flags.empty()) {
    out.no_voting_spaces = true;
    return out;
  }
  for (const auto& row : flags) {
    if (row.size() != n_trajectories) throw Error(Errc::DimensionMismatch, "flag row length");
    for (std::size_t i = 0; i < n_trajectories; ++i) out.votes[i] += row[i] ? 1 : 0;
  }
  // votes > n/2  <=>  2 * votes > n, kept in integers.
  for (std::size_t i = 0; i < n_trajectories; ++i) {
    if (2 * out.votes[i] > out.n_voting) out.anomalous.push_back(i);
  }
  return out;
}

EntropyVector entropy_vector(const FeatureMatrix& normalized, const ClusterModel& model) {
  EntropyVector out{model.space, std::vector<double>(normalized.size(), 0.0), model.k(), false};
  if (model.k() < 2) {
    out.abstained = true;
    return out;
  }
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    const auto d = distance_to_centers(normalized.rows.row(static_cast<Eigen::Index>(i)).transpose(),
                                       model.centers);
    out.values[i] = entropy_score(d);
  }
  return out;
}

namespace {

SpaceResult run_space(FeatureMatrix raw, const DetectorConfig& cfg) {
  SpaceResult r;
  r.space = raw.space;
  r.normalized = zscore_normalize(raw);
  r.model = mean_shift_cluster(r.normalized, cfg.cluster);
  r.entropy = entropy_vector(r.normalized, r.model);
  if (r.entropy.abstained) {
    r.flags.assign(r.entropy.values.size(), false);
    return r;
  }
  r.threshold = cfg.threshold_quantile ? quantile_threshold(r.entropy, *cfg.threshold_quantile)
                                       : adaptive_threshold(r.entropy, cfg.kappa);
  r.flags = feature_anomalies(r.entropy, *r.threshold);
  return r;
}

}  // namespace

AnomalyReport detect(const Scene& scene, const DetectorConfig& cfg) {
  cfg.validate();
  AnomalyReport report;
  report.scene_digest = scene_digest(scene);
  report.config = cfg;
  for (const auto& t : scene.trajectories()) report.trajectory_ids.push_back(t.id);

  auto matrices = build_feature_matrices(scene, cfg.features);

  // Each space is independent until the vote.
  std::array<std::future<SpaceResult>, 4> pending;
  for (std::size_t s = 0; s < pending.size(); ++s) {
    pending[s] = std::async(std::launch::async, run_space, std::move(matrices[s]), std::cref(cfg));
  }
  for (std::size_t s = 0; s < pending.size(); ++s) report.spaces[s] = pending[s].get();

  std::vector<FlagRow> voting;
  for (const auto& sr : report.spaces) {
    if (!sr.entropy.abstained) voting.push_back(sr.flags);
  }
  const auto result = vote(voting, scene.size());
  report.votes = result.votes;
  report.n_voting = result.n_voting;
  for (auto i : result.anomalous) report.anomalies.push_back(report.trajectory_ids[i]);
  std::sort(report.anomalies.begin(), report.anomalies.end(),
            [](const std::string& a, const std::string& b) { return id_less(a, b); });
  if (result.no_voting_spaces) {
    report.warnings.push_back("NoVotingSpaces: every feature space produced a single cluster");
  }
  return report;
}

}  // namespace trajanom
