#include "trajanom/features.hpp"

#include <Eigen/QR>
#include <cmath>

#include "trajanom/error.hpp"

namespace trajanom {

std::string_view to_string(FeatureSpace space) noexcept {
  switch (space) {
    case FeatureSpace::Density: return "density";
    case FeatureSpace::Shape: return "shape";
    case FeatureSpace::MeanPosition: return "mean_position";
    case FeatureSpace::StdDev: return "stddev";
  }
  return "unknown";
}

std::optional<FeatureSpace> feature_space_from_string(std::string_view name) noexcept {
  for (auto space : kFeatureSpaces) {
    if (to_string(space) == name) return space;
  }
  return std::nullopt;
}

std::size_t dimension(FeatureSpace space) noexcept {
  switch (space) {
    case FeatureSpace::Density: return 3;
    case FeatureSpace::Shape: return 8;
    case FeatureSpace::MeanPosition: return 2;
    case FeatureSpace::StdDev: return 2;
  }
  return 0;
}

void FeatureConfig::validate() const {
  double prev = 0.0;
  for (double f : epsilon_fractions) {
    if (!(f > prev) || !(f <= 1.0)) {
      throw Error(Errc::InvalidConfig,
                  "epsilon_fractions must be strictly increasing within (0, 1]");
    }
    prev = f;
  }
  if (resample_count < 4) throw Error(Errc::InvalidConfig, "resample_count must be >= 4");
}

double st_distance(const ResampledTrajectory& a, const ResampledTrajectory& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw Error(Errc::MismatchedResolution, "resampled lengths " + std::to_string(a.size()) +
                                                " and " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::hypot(a.points[i].x - b.points[i].x, a.points[i].y - b.points[i].y);
  }
  return sum / static_cast<double>(a.size());
}

Eigen::MatrixXd st_distance_matrix(std::span<const ResampledTrajectory> resampled) {
  const auto n = static_cast<Eigen::Index>(resampled.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = st_distance(resampled[static_cast<std::size_t>(i)],
                                   resampled[static_cast<std::size_t>(j)]);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

FeatureMatrix density_feature(const Eigen::MatrixXd& distances, const std::array<double, 3>& radii) {
  const auto n = distances.rows();
  FeatureMatrix m{FeatureSpace::Density, Eigen::MatrixXd::Zero(n, 3), std::nullopt};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      for (Eigen::Index e = 0; e < 3; ++e) {
        if (distances(j, i) < radii[static_cast<std::size_t>(e)]) m.rows(j, e) += 1.0;
      }
    }
  }
  return m;
}

namespace {

std::array<double, 3> radii_for(const Scene& scene, const FeatureConfig& cfg) {
  const double diag = scene.diagonal();
  return {cfg.epsilon_fractions[0] * diag, cfg.epsilon_fractions[1] * diag,
          cfg.epsilon_fractions[2] * diag};
}

}  // namespace

FeatureMatrix density_feature(const Scene& scene, const FeatureConfig& cfg) {
  cfg.validate();
  const auto resampled = resample_all(scene, cfg.resample_count);
  return density_feature(st_distance_matrix(resampled), radii_for(scene, cfg));
}

std::array<double, 8> shape_feature(const ResampledTrajectory& r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  if (n < 4) throw Error(Errc::MismatchedResolution, "cubic fit needs at least 4 points");

  Eigen::MatrixXd vander(n, 4);
  Eigen::MatrixXd rhs(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    vander(i, 0) = 1.0;
    vander(i, 1) = u;
    vander(i, 2) = u * u;
    vander(i, 3) = u * u * u;
    rhs(i, 0) = r.points[static_cast<std::size_t>(i)].x;
    rhs(i, 1) = r.points[static_cast<std::size_t>(i)].y;
  }
  const Eigen::MatrixXd coef = vander.colPivHouseholderQr().solve(rhs);
  std::array<double, 8> out{};
  for (Eigen::Index c = 0; c < 4; ++c) {
    out[static_cast<std::size_t>(c)] = coef(c, 0);
    out[static_cast<std::size_t>(c + 4)] = coef(c, 1);
  }
  return out;
}

std::array<double, 2> mean_position_feature(const Trajectory& traj) {
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& s : traj.samples) {
    sx += s.x;
    sy += s.y;
  }
  const auto n = static_cast<double>(traj.samples.size());
  return {sx / n, sy / n};
}

std::array<double, 2> stddev_feature(const Trajectory& traj) {
  const auto [mx, my] = mean_position_feature(traj);
  double vx = 0.0;
  double vy = 0.0;
  for (const auto& s : traj.samples) {
    vx += (s.x - mx) * (s.x - mx);
    vy += (s.y - my) * (s.y - my);
  }
  const auto n = static_cast<double>(traj.samples.size());
  return {std::sqrt(vx / n), std::sqrt(vy / n)};
}

FeatureMatrix zscore_normalize(const FeatureMatrix& m) {
  const auto n = m.rows.rows();
  const auto d = m.rows.cols();
  Normalization norm{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)};
  FeatureMatrix out{m.space, Eigen::MatrixXd::Zero(n, d), std::nullopt};
  if (n == 0) {
    out.normalization = std::move(norm);
    return out;
  }
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto col = m.rows.col(c);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().mean();
    const double sd = std::sqrt(var);
    norm.mean(c) = mean;
    // Columns whose spread is at rounding level of their magnitude are constant.
    const bool constant = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
    norm.stddev(c) = constant ? 0.0 : sd;
    if (!constant) out.rows.col(c) = (col.array() - mean) / sd;
  }
  out.normalization = std::move(norm);
  return out;
}

namespace {

FeatureMatrix per_trajectory(const Scene& scene, FeatureSpace space,
                             std::span<const ResampledTrajectory> resampled) {
  const auto n = static_cast<Eigen::Index>(scene.size());
  const auto d = static_cast<Eigen::Index>(dimension(space));
  FeatureMatrix m{space, Eigen::MatrixXd::Zero(n, d), std::nullopt};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& traj = scene[static_cast<std::size_t>(i)];
    switch (space) {
      case FeatureSpace::Shape: {
        const auto f = shape_feature(resampled[static_cast<std::size_t>(i)]);
        for (Eigen::Index c = 0; c < d; ++c) m.rows(i, c) = f[static_cast<std::size_t>(c)];
        break;
      }
      case FeatureSpace::MeanPosition: {
        const auto f = mean_position_feature(traj);
        m.rows(i, 0) = f[0];
        m.rows(i, 1) = f[1];
        break;
      }
      case FeatureSpace::StdDev: {
        const auto f = stddev_feature(traj);
        m.rows(i, 0) = f[0];
        m.rows(i, 1) = f[1];
        break;
      }
      case FeatureSpace::Density: break;
    }
  }
  return m;
}

}  // namespace

FeatureMatrix build_feature_matrix(const Scene& scene, FeatureSpace space, const FeatureConfig& cfg) {
  cfg.validate();
  if (space == FeatureSpace::Density) return density_feature(scene, cfg);
  std::vector<ResampledTrajectory> resampled;
  if (space == FeatureSpace::Shape) resampled = resample_all(scene, cfg.resample_count);
  return per_trajectory(scene, space, resampled);
}

std::array<FeatureMatrix, 4> build_feature_matrices(const Scene& scene, const FeatureConfig& cfg) {
  cfg.validate();
  const auto resampled = resample_all(scene, cfg.resample_count);
  return {density_feature(st_distance_matrix(resampled), radii_for(scene, cfg)),
          per_trajectory(scene, FeatureSpace::Shape, resampled),
          per_trajectory(scene, FeatureSpace::MeanPosition, resampled),
          per_trajectory(scene, FeatureSpace::StdDev, resampled)};
}

}  // namespace trajanom
