#include "trajanom/trajmodel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "trajanom/error.hpp"

namespace trajanom {

void ModelConfig::validate() const {
  if (min_samples < 2) throw Error(Errc::InvalidConfig, "min_samples must be >= 2");
}

double BoundingBox::diagonal() const noexcept {
  return std::hypot(x_max - x_min, y_max - y_min);
}

BoundingBox bounding_box(std::span<const Trajectory> trajectories) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{inf, -inf, inf, -inf};
  for (const auto& traj : trajectories) {
    for (const auto& s : traj.samples) {
      box.x_min = std::min(box.x_min, s.x);
      box.x_max = std::max(box.x_max, s.x);
      box.y_min = std::min(box.y_min, s.y);
      box.y_max = std::max(box.y_max, s.y);
    }
  }
  if (box.x_min > box.x_max) return BoundingBox{};
  return box;
}

namespace {

void check_trajectory(const Trajectory& traj, const ModelConfig& cfg) {
  if (traj.id.empty()) throw Error(Errc::MalformedRow, "empty trajectory id");
  if (traj.samples.size() < cfg.min_samples) {
    throw Error(Errc::DegenerateScene, "trajectory '" + traj.id + "' has " +
                                           std::to_string(traj.samples.size()) +
                                           " samples, fewer than min_samples");
  }
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y) || s.t < 0.0) {
      throw Error(Errc::MalformedRow, "non-finite or negative-time sample in '" + traj.id + "'");
    }
    if (i > 0 && !(s.t > traj.samples[i - 1].t)) {
      throw Error(Errc::NonMonotonicTime, "trajectory '" + traj.id + "'");
    }
  }
}

}  // namespace

Scene::Scene(std::vector<Trajectory> trajectories, const ModelConfig& cfg)
    : trajectories_(std::move(trajectories)) {
  cfg.validate();
  std::unordered_set<std::string_view> seen;
  for (const auto& traj : trajectories_) {
    check_trajectory(traj, cfg);
    if (!seen.insert(traj.id).second) {
      throw Error(Errc::DegenerateScene, "duplicate trajectory id '" + traj.id + "'");
    }
  }
  if (trajectories_.size() < 2) {
    throw Error(Errc::DegenerateScene, "scene needs at least 2 trajectories, got " +
                                           std::to_string(trajectories_.size()));
  }
  bbox_ = bounding_box(trajectories_);
  diagonal_ = bbox_.diagonal();
  if (!(diagonal_ > 0.0)) throw Error(Errc::DegenerateScene, "scene has zero spatial extent");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size() && std::isfinite(out);
}

}  // namespace

ParseResult parse_trajectories(std::string_view text, const ModelConfig& cfg) {
  cfg.validate();
  std::vector<Trajectory> trajectories;
  std::unordered_map<std::string, std::size_t> index_of;
  std::vector<std::size_t> last_line;

  std::size_t line_no = 0;
  std::size_t rows = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty()) continue;
    if (rows == 0 && line == "id,t,x,y") continue;

    std::array<std::string_view, 4> fields;
    std::size_t n_fields = 0;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      if (n_fields == fields.size()) {
        n_fields = fields.size() + 1;  // too many
        break;
      }
      fields[n_fields++] = trim(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (n_fields != 4) {
      throw Error(Errc::MalformedRow, "expected 4 fields id,t,x,y", line_no);
    }
    Sample s;
    if (fields[0].empty() || !parse_double(fields[1], s.t) || !parse_double(fields[2], s.x) ||
        !parse_double(fields[3], s.y)) {
      throw Error(Errc::MalformedRow, "non-numeric or empty field", line_no);
    }
    if (s.t < 0.0) throw Error(Errc::MalformedRow, "negative time", line_no);
    ++rows;

    std::string id(fields[0]);
    auto [it, inserted] = index_of.try_emplace(id, trajectories.size());
    if (inserted) {
      trajectories.push_back(Trajectory{std::move(id), {}});
      last_line.push_back(0);
    }
    auto& traj = trajectories[it->second];
    if (!traj.samples.empty() && !(s.t > traj.samples.back().t)) {
      throw Error(Errc::NonMonotonicTime,
                  "trajectory '" + traj.id + "' time does not increase after line " +
                      std::to_string(last_line[it->second]),
                  line_no);
    }
    traj.samples.push_back(s);
    last_line[it->second] = line_no;
  }
  if (rows == 0) throw Error(Errc::EmptyInput, "no trajectory rows");

  const auto before = trajectories.size();
  std::erase_if(trajectories,
                [&](const Trajectory& t) { return t.samples.size() < cfg.min_samples; });
  const std::size_t dropped = before - trajectories.size();
  return ParseResult{Scene(std::move(trajectories), cfg), dropped};
}

namespace {

void append_number(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

std::string write_trajectories(const Scene& scene) {
  std::string out = "id,t,x,y\n";
  for (const auto& traj : scene.trajectories()) {
    for (const auto& s : traj.samples) {
      out += traj.id;
      out += ',';
      append_number(out, s.t);
      out += ',';
      append_number(out, s.x);
      out += ',';
      append_number(out, s.y);
      out += '\n';
    }
  }
  return out;
}

double scene_diagonal(const Scene& scene) {
  const double d = bounding_box(scene.trajectories()).diagonal();
  if (!(d > 0.0)) throw Error(Errc::DegenerateScene, "scene has zero spatial extent");
  return d;
}

std::string scene_digest(const Scene& scene) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : write_trajectories(scene)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

ResampledTrajectory resample(const Trajectory& traj, std::size_t count) {
  if (count < 2) throw Error(Errc::InvalidConfig, "resample count must be >= 2");
  if (traj.samples.empty()) throw Error(Errc::DegenerateScene, "empty trajectory");

  const auto& s = traj.samples;
  ResampledTrajectory out{traj.id, std::vector<Point2>(count)};
  out.points.front() = {s.front().x, s.front().y};
  out.points.back() = {s.back().x, s.back().y};

  const double t0 = s.front().t;
  const double span = s.back().t - t0;
  std::size_t seg = 0;
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(count - 1);
    const double t = t0 + u * span;
    while (seg + 2 < s.size() && s[seg + 1].t < t) ++seg;
    const auto& a = s[seg];
    const auto& b = s[std::min(seg + 1, s.size() - 1)];
    const double dt = b.t - a.t;
    const double w = dt > 0.0 ? std::clamp((t - a.t) / dt, 0.0, 1.0) : 0.0;
    out.points[k] = {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
  }
  return out;
}

std::vector<ResampledTrajectory> resample_all(const Scene& scene, std::size_t count) {
  std::vector<ResampledTrajectory> out;
  out.reserve(scene.size());
  for (const auto& traj : scene.trajectories()) out.push_back(resample(traj, count));
  return out;
}

namespace {

bool all_digits(std::string_view s) noexcept {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

bool id_less(std::string_view a, std::string_view b) noexcept {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na != nb) return na;
  if (na) {
    std::string_view sa = a;
    std::string_view sb = b;
    while (sa.size() > 1 && sa.front() == '0') sa.remove_prefix(1);
    while (sb.size() > 1 && sb.front() == '0') sb.remove_prefix(1);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

}  // namespace trajanom
