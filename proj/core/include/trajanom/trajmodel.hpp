#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trajanom {

/// One tracked position. Time is in seconds, coordinates in scene units.
struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Trajectory {
  std::string id;
  std::vector<Sample> samples;  // strictly increasing in t

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct ModelConfig {
  std::size_t min_samples = 8;

  void validate() const;
};

struct BoundingBox {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double diagonal() const noexcept;
};

/// Min/max scan over every sample of every trajectory.
BoundingBox bounding_box(std::span<const Trajectory> trajectories);

/// Validated, immutable set of trajectories observed in one scene.
///
/// Construction checks every trajectory (finite samples, strictly increasing
/// time, at least `min_samples` entries) and the scene itself (two or more
/// trajectories, positive bounding-box diagonal).
class Scene {
 public:
  explicit Scene(std::vector<Trajectory> trajectories, const ModelConfig& cfg = {});

  const std::vector<Trajectory>& trajectories() const noexcept { return trajectories_; }
  std::size_t size() const noexcept { return trajectories_.size(); }
  const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
  const BoundingBox& bbox() const noexcept { return bbox_; }
  double diagonal() const noexcept { return diagonal_; }

 private:
  std::vector<Trajectory> trajectories_;
  BoundingBox bbox_;
  double diagonal_ = 0.0;
};

struct ParseResult {
  Scene scene;
  /// Trajectories dropped for having fewer than `min_samples` samples.
  std::size_t dropped_short = 0;
};

/// Parses `id,t,x,y` rows. A leading `id,t,x,y` header is skipped, blank
/// lines are ignored, LF and CRLF are both accepted. Trajectories keep the
/// order in which their ids first appear.
ParseResult parse_trajectories(std::string_view text, const ModelConfig& cfg = {});

/// Writes the scene back as `id,t,x,y` CSV (with header) using shortest
/// round-trip number formatting, so parsing the output reproduces every
/// sample bit-for-bit.
std::string write_trajectories(const Scene& scene);

/// Throws DegenerateScene when the bounding box has zero extent.
double scene_diagonal(const Scene& scene);

/// Stable 64-bit FNV-1a digest of the canonical CSV form, as 16 hex digits.
std::string scene_digest(const Scene& scene);

/// Fixed-length rendering of a trajectory over its own normalized lifespan.
struct ResampledTrajectory {
  std::string id;
  std::vector<Point2> points;

  std::size_t size() const noexcept { return points.size(); }
};

/// Piecewise-linear interpolation of (x, y) against t at `count` uniform
/// positions u = 0, 1/(count-1), ..., 1 of the lifespan. The first and last
/// points are the first and last samples exactly.
ResampledTrajectory resample(const Trajectory& traj, std::size_t count);

std::vector<ResampledTrajectory> resample_all(const Scene& scene, std::size_t count);

/// Ordering used for reported id lists: purely numeric ids compare by value,
/// anything else lexicographically, numeric before non-numeric.
bool id_less(std::string_view a, std::string_view b) noexcept;

}  // namespace trajanom
