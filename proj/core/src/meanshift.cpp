#include "trajanom/meanshift.hpp"

#include <algorithm>
#include <cmath>

#include "trajanom/error.hpp"

namespace trajanom {

std::string_view to_string(KernelProfile profile) noexcept {
  switch (profile) {
    case KernelProfile::Gaussian: return "gaussian";
    case KernelProfile::Epanechnikov: return "epanechnikov";
  }
  return "unknown";
}

std::optional<KernelProfile> kernel_profile_from_string(std::string_view name) noexcept {
  if (name == "gaussian") return KernelProfile::Gaussian;
  if (name == "epanechnikov") return KernelProfile::Epanechnikov;
  return std::nullopt;
}

double KernelSpec::profile_value(double r2) const noexcept {
  switch (profile) {
    case KernelProfile::Gaussian: return std::exp(-0.5 * r2);
    case KernelProfile::Epanechnikov: return r2 < 1.0 ? 1.0 - r2 : 0.0;
  }
  return 0.0;
}

double KernelSpec::shadow_weight(double r2) const noexcept {
  switch (profile) {
    case KernelProfile::Gaussian: return 0.5 * std::exp(-0.5 * r2);
    case KernelProfile::Epanechnikov: return r2 <= 1.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

void ClusterConfig::validate() const {
  if (!(bandwidth_factor > 0.0) || !std::isfinite(bandwidth_factor)) {
    throw Error(Errc::InvalidConfig, "bandwidth_factor must be positive");
  }
  if (bandwidth && !(*bandwidth > 0.0 && std::isfinite(*bandwidth))) {
    throw Error(Errc::InvalidConfig, "bandwidth must be positive");
  }
  if (max_iterations == 0) throw Error(Errc::InvalidConfig, "max_iterations must be positive");
  if (!(convergence_tol > 0.0)) throw Error(Errc::InvalidConfig, "convergence_tol must be positive");
  if (!(merge_radius_factor > 0.0 && merge_radius_factor < 1.0)) {
    throw Error(Errc::InvalidConfig, "merge_radius_factor must lie in (0, 1)");
  }
}

namespace {

std::vector<double> pairwise_distances(const Eigen::MatrixXd& data) {
  const auto n = data.rows();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back((data.row(i) - data.row(j)).norm());
  }
  return out;
}

double median_of(std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

double median_pairwise_distance(const Eigen::MatrixXd& data) {
  auto d = pairwise_distances(data);
  return median_of(d);
}

Eigen::VectorXd mean_shift_step(const Eigen::VectorXd& x, const Eigen::MatrixXd& data,
                                double bandwidth, const KernelSpec& kernel) {
  if (data.rows() == 0) throw Error(Errc::ZeroWeight, "empty data set");
  if (data.cols() != x.size()) throw Error(Errc::DimensionMismatch, "point and data dimensions differ");

  const double inv_h2 = 1.0 / (bandwidth * bandwidth);
  const Eigen::ArrayXd r2 = (data.rowwise() - x.transpose()).rowwise().squaredNorm().array() * inv_h2;
  Eigen::ArrayXd w;
  if (kernel.profile == KernelProfile::Gaussian) {
    w = 0.5 * (-0.5 * r2).exp();
  } else {
    w = r2.unaryExpr([&](double v) { return kernel.shadow_weight(v); });
  }
  const double total = w.sum();
  if (!(total > 0.0)) throw Error(Errc::ZeroWeight, "no datum inside the kernel window");
  return (data.transpose() * w.matrix()) / total;
}

ModeSeek seek_mode(const Eigen::VectorXd& start, const Eigen::MatrixXd& data, double bandwidth,
                   const ClusterConfig& cfg, std::vector<Eigen::VectorXd>* path) {
  ModeSeek out{start, 0, false};
  if (path) path->push_back(start);
  while (out.iterations < cfg.max_iterations) {
    Eigen::VectorXd next = mean_shift_step(out.mode, data, bandwidth, cfg.kernel);
    const double shift = (next - out.mode).norm();
    out.mode = std::move(next);
    ++out.iterations;
    if (path) path->push_back(out.mode);
    if (shift < cfg.convergence_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

namespace {

struct Group {
  Eigen::VectorXd seed;
  std::vector<std::size_t> members;
  Eigen::VectorXd mean;
};

Eigen::VectorXd mean_of(const std::vector<Eigen::VectorXd>& points, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(points[idx.front()].size());
  for (auto i : idx) sum += points[i];
  return sum / static_cast<double>(idx.size());
}

std::vector<Group> merge_modes(const std::vector<Eigen::VectorXd>& converged, double radius) {
  std::vector<Group> groups;
  for (std::size_t i = 0; i < converged.size(); ++i) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return (g.seed - converged[i]).norm() < radius;
    });
    if (it == groups.end()) {
      groups.push_back(Group{converged[i], {i}, {}});
    } else {
      it->members.push_back(i);
    }
  }
  for (auto& g : groups) g.mean = mean_of(converged, g.members);

  // Seed-based grouping can leave two group means inside the merge radius;
  // fold later groups into earlier ones until every pair is separated.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < groups.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        if ((groups[a].mean - groups[b].mean).norm() <= radius) {
          auto& dst = groups[a].members;
          dst.insert(dst.end(), groups[b].members.begin(), groups[b].members.end());
          std::sort(dst.begin(), dst.end());
          groups[a].mean = mean_of(converged, dst);
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(b));
          changed = true;
          break;
        }
      }
    }
  }
  return groups;
}

bool all_rows_identical(const Eigen::MatrixXd& data) {
  for (Eigen::Index i = 1; i < data.rows(); ++i) {
    if (data.row(i) != data.row(0)) return false;
  }
  return true;
}

}  // namespace

ClusterModel mean_shift_cluster(const FeatureMatrix& m, const ClusterConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd& data = m.rows;
  const auto n = static_cast<std::size_t>(data.rows());
  if (n < 2) throw Error(Errc::DegenerateScene, "clustering needs at least 2 rows");

  ClusterModel model;
  model.space = m.space;

  if (all_rows_identical(data)) {
    model.centers = data.row(0);
    model.assignments.assign(n, 0);
    model.degenerate = true;
    return model;
  }

  double h = 0.0;
  if (cfg.bandwidth) {
    h = *cfg.bandwidth;
  } else {
    auto dists = pairwise_distances(data);
    double med = median_of(dists);
    if (!(med > 0.0)) {
      // More than half the pairs coincide; scale off the distinct pairs instead.
      std::erase_if(dists, [](double d) { return !(d > 0.0); });
      med = median_of(dists);
    }
    h = cfg.bandwidth_factor * med;
  }
  model.bandwidth = h;

  std::vector<Eigen::VectorXd> converged(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seek = seek_mode(data.row(static_cast<Eigen::Index>(i)).transpose(), data, h, cfg);
    converged[i] = seek.mode;
    model.max_iterations_used = std::max(model.max_iterations_used, seek.iterations);
    if (!seek.converged) ++model.unconverged;
  }

  const auto groups = merge_modes(converged, cfg.merge_radius_factor * h);
  model.centers.resize(static_cast<Eigen::Index>(groups.size()), data.cols());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    model.centers.row(static_cast<Eigen::Index>(g)) = groups[g].mean.transpose();
  }

  model.assignments.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    (model.centers.rowwise() - data.row(static_cast<Eigen::Index>(i))).rowwise().squaredNorm().minCoeff(&best);
    model.assignments[i] = static_cast<std::size_t>(best);
  }
  return model;
}

}  // namespace trajanom
