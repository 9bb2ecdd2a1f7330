#pragma once

#include <Eigen/Core>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajanom/features.hpp"
#include "trajanom/meanshift.hpp"
#include "trajanom/trajmodel.hpp"

namespace trajanom {

using FlagRow = std::vector<bool>;

struct DetectorConfig {
  ModelConfig model;
  FeatureConfig features;
  ClusterConfig cluster;
  /// thresh = mean(H) + kappa * std(H), clamped to 1.
  double kappa = 1.5;
  /// When set, thresh is this quantile of H instead, and kappa is unused.
  std::optional<double> threshold_quantile;

  void validate() const;
};

struct EntropyVector {
  FeatureSpace space = FeatureSpace::Density;
  std::vector<double> values;  // one per trajectory, each in [0, 1]
  std::size_t k = 0;
  bool abstained = false;      // k == 1: space does not vote
};

/// Euclidean distance from `point` to every row of `centers`, in row order.
std::vector<double> distance_to_centers(const Eigen::VectorXd& point, const Eigen::MatrixXd& centers);

/// Shannon entropy of the distance-normalized distribution p_k = d_k / sum(d),
/// in log base k so the result lies in [0, 1]. 0 log 0 is taken as 0.
/// Throws SingleCluster for k == 1 and AllZeroDistances when sum(d) == 0.
double entropy_score(std::span<const double> distances);

/// mean(H) + kappa * population-std(H), clamped to at most 1.
double adaptive_threshold(const EntropyVector& h, double kappa);

/// Linear-interpolated q-quantile of H (q in [0, 1]).
double quantile_threshold(const EntropyVector& h, double q);

/// flag[i] = H[i] > thresh. Abstaining vectors produce all-false flags.
FlagRow feature_anomalies(const EntropyVector& h, double thresh);

struct VoteResult {
  std::vector<std::size_t> votes;       // per trajectory
  std::size_t n_voting = 0;
  std::vector<std::size_t> anomalous;   // trajectory indices, ascending
  bool no_voting_spaces = false;
};

/// Strict-majority vote: trajectory i is anomalous iff its flag count is
/// greater than n_voting / 2, where n_voting = flags.size(). With no voting
/// rows the result is empty and `no_voting_spaces` is set.
VoteResult vote(std::span<const FlagRow> flags, std::size_t n_trajectories);

struct SpaceResult {
  FeatureSpace space = FeatureSpace::Density;
  FeatureMatrix normalized;
  ClusterModel model;
  EntropyVector entropy;
  std::optional<double> threshold;  // absent when the space abstains
  FlagRow flags;
};

struct AnomalyReport {
  std::string scene_digest;
  DetectorConfig config;
  std::vector<std::string> trajectory_ids;  // scene order
  std::array<SpaceResult, 4> spaces;        // kFeatureSpaces order
  std::vector<std::size_t> votes;
  std::size_t n_voting = 0;
  std::vector<std::string> anomalies;       // ascending by id_less
  std::vector<std::string> warnings;
};

/// Scores one already-clustered feature space.
EntropyVector entropy_vector(const FeatureMatrix& normalized, const ClusterModel& model);

/// Full pipeline: features, z-score, mean-shift, entropy, threshold, vote.
AnomalyReport detect(const Scene& scene, const DetectorConfig& cfg);

}  // namespace trajanom
