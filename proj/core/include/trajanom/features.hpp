#pragma once

#include <Eigen/Core>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trajanom/trajmodel.hpp"

namespace trajanom {

enum class FeatureSpace { Density, Shape, MeanPosition, StdDev };

inline constexpr std::array<FeatureSpace, 4> kFeatureSpaces = {
    FeatureSpace::Density, FeatureSpace::Shape, FeatureSpace::MeanPosition, FeatureSpace::StdDev};

std::string_view to_string(FeatureSpace space) noexcept;
std::optional<FeatureSpace> feature_space_from_string(std::string_view name) noexcept;

/// Column count of a feature space: Density 3, Shape 8, MeanPosition 2, StdDev 2.
std::size_t dimension(FeatureSpace space) noexcept;

struct FeatureConfig {
  /// Neighbourhood radii as fractions of the scene diagonal.
  std::array<double, 3> epsilon_fractions = {0.05, 0.10, 0.20};
  std::size_t resample_count = 32;

  void validate() const;
};

struct Normalization {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // population std; 0 marks a constant column
};

/// One row per trajectory, in scene order.
struct FeatureMatrix {
  FeatureSpace space = FeatureSpace::Density;
  Eigen::MatrixXd rows;
  std::optional<Normalization> normalization;

  std::size_t size() const noexcept { return static_cast<std::size_t>(rows.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rows.cols()); }
};

/// Mean Euclidean distance between index-aligned points of two resampled
/// trajectories. Throws MismatchedResolution when point counts differ.
double st_distance(const ResampledTrajectory& a, const ResampledTrajectory& b);

/// Symmetric matrix of st_distance over every pair; zero diagonal.
Eigen::MatrixXd st_distance_matrix(std::span<const ResampledTrajectory> resampled);

/// Neighbour counts per radius from a precomputed distance matrix: entry
/// (j, e) counts i != j with distance(j, i) < radii[e].
FeatureMatrix density_feature(const Eigen::MatrixXd& distances, const std::array<double, 3>& radii);
FeatureMatrix density_feature(const Scene& scene, const FeatureConfig& cfg);

/// Least-squares cubic coefficients [a0..a3, b0..b3] of x(u), y(u) over
/// normalized time u in [0, 1].
std::array<double, 8> shape_feature(const ResampledTrajectory& r);

/// Mean of the raw samples.
std::array<double, 2> mean_position_feature(const Trajectory& traj);

/// Population standard deviation of raw x and raw y samples.
std::array<double, 2> stddev_feature(const Trajectory& traj);

/// Per-column z-score with population std. Constant columns map to zero.
FeatureMatrix zscore_normalize(const FeatureMatrix& m);

FeatureMatrix build_feature_matrix(const Scene& scene, FeatureSpace space, const FeatureConfig& cfg);

/// All four spaces sharing one resampling pass and one distance matrix.
std::array<FeatureMatrix, 4> build_feature_matrices(const Scene& scene, const FeatureConfig& cfg);

}  // namespace trajanom
