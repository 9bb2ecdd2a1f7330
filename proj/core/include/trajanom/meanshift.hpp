#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "trajanom/features.hpp"

namespace trajanom {

enum class KernelProfile { Gaussian, Epanechnikov };

std::string_view to_string(KernelProfile profile) noexcept;
std::optional<KernelProfile> kernel_profile_from_string(std::string_view name) noexcept;

/// Radially symmetric kernel described by its profile k(r2), where r2 is the
/// squared scaled distance ||(x - xi) / h||^2. The mean-shift weights use the
/// shadow profile g(r2) = -k'(r2).
///
///   Gaussian:      k(r2) = exp(-r2 / 2)           g(r2) = exp(-r2 / 2) / 2
///   Epanechnikov:  k(r2) = max(0, 1 - r2)         g(r2) = 1 for r2 <= 1, else 0
///
/// Both shadows are non-negative and non-increasing on [0, inf). Normalizing
/// constants are dropped; they never move a mode.
struct KernelSpec {
  KernelProfile profile = KernelProfile::Gaussian;

  double profile_value(double r2) const noexcept;
  double shadow_weight(double r2) const noexcept;
};

struct ClusterConfig {
  KernelSpec kernel;
  /// h = bandwidth_factor * median pairwise distance of the input rows.
  double bandwidth_factor = 0.3;
  /// When set, used as h directly and bandwidth_factor is ignored.
  std::optional<double> bandwidth;
  std::size_t max_iterations = 300;
  double convergence_tol = 1e-6;
  /// Converged points closer than merge_radius_factor * h share a mode.
  double merge_radius_factor = 0.5;

  void validate() const;
};

struct ClusterModel {
  FeatureSpace space = FeatureSpace::Density;
  Eigen::MatrixXd centers;                // k x dim, normalized coordinates
  std::vector<std::size_t> assignments;   // per row, index into centers
  double bandwidth = 0.0;
  bool degenerate = false;                // all rows identical, k = 1
  std::size_t max_iterations_used = 0;
  std::size_t unconverged = 0;            // rows that hit max_iterations

  std::size_t k() const noexcept { return static_cast<std::size_t>(centers.rows()); }
};

/// Median of the n(n-1)/2 pairwise Euclidean distances between rows.
double median_pairwise_distance(const Eigen::MatrixXd& data);

/// Kernel-weighted mean of `data` rows around x, i.e. x + m_{h,G}(x).
/// Throws ZeroWeight when no datum carries weight (truncated kernels only).
Eigen::VectorXd mean_shift_step(const Eigen::VectorXd& x, const Eigen::MatrixXd& data,
                                double bandwidth, const KernelSpec& kernel);

struct ModeSeek {
  Eigen::VectorXd mode;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Iterates mean_shift_step from `start` until the shift drops below
/// convergence_tol or max_iterations is reached. When `path` is given it
/// receives every iterate, starting with `start`.
ModeSeek seek_mode(const Eigen::VectorXd& start, const Eigen::MatrixXd& data, double bandwidth,
                   const ClusterConfig& cfg, std::vector<Eigen::VectorXd>* path = nullptr);

/// Runs mode seeking from every row, merges converged points in row order
/// into modes (each mode is the mean of its points), and assigns each row to
/// its nearest mode.
ClusterModel mean_shift_cluster(const FeatureMatrix& m, const ClusterConfig& cfg);

}  // namespace trajanom
