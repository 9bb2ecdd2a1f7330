#pragma once

// Brute-force reference implementations. Deliberately naive: plain loops,
// long double accumulators, no Eigen, no shared code with core/.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "trajanom/trajmodel.hpp"

namespace oracle {

using trajanom::Point2;
using trajanom::ResampledTrajectory;
using trajanom::Sample;
using trajanom::Trajectory;

// Linear interpolation at absolute time t by scanning for the bracketing pair.
inline Point2 interpolate_at(const Trajectory& tr, double t) {
  const auto& s = tr.samples;
  if (t <= s.front().t) return {s.front().x, s.front().y};
  if (t >= s.back().t) return {s.back().x, s.back().y};
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (t >= s[i].t && t <= s[i + 1].t) {
      const long double w = (static_cast<long double>(t) - s[i].t) / (static_cast<long double>(s[i + 1].t) - s[i].t);
      return {static_cast<double>(s[i].x + w * (static_cast<long double>(s[i + 1].x) - s[i].x)),
              static_cast<double>(s[i].y + w * (static_cast<long double>(s[i + 1].y) - s[i].y))};
    }
  }
  return {s.back().x, s.back().y};
}

inline Point2 interpolate_normalized(const Trajectory& tr, double u) {
  const double t0 = tr.samples.front().t;
  const double t1 = tr.samples.back().t;
  return interpolate_at(tr, t0 + u * (t1 - t0));
}

inline double st_distance(const ResampledTrajectory& a, const ResampledTrajectory& b) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const long double dx = static_cast<long double>(a.points[i].x) - b.points[i].x;
    const long double dy = static_cast<long double>(a.points[i].y) - b.points[i].y;
    sum += std::sqrt(dx * dx + dy * dy);
  }
  return static_cast<double>(sum / a.points.size());
}

// counts[j][e] = #{i != j : d(i, j) < radii[e]}
inline std::vector<std::vector<int>> density_counts(const std::vector<ResampledTrajectory>& r,
                                                    const std::vector<double>& radii) {
  std::vector<std::vector<int>> out(r.size(), std::vector<int>(radii.size(), 0));
  for (std::size_t j = 0; j < r.size(); ++j) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == j) continue;
      const double d = st_distance(r[j], r[i]);
      for (std::size_t e = 0; e < radii.size(); ++e) out[j][e] += d < radii[e] ? 1 : 0;
    }
  }
  return out;
}

inline double bbox_diagonal(const std::vector<Trajectory>& trajs) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& tr : trajs) {
    for (const auto& s : tr.samples) {
      x0 = std::min(x0, s.x);
      x1 = std::max(x1, s.x);
      y0 = std::min(y0, s.y);
      y1 = std::max(y1, s.y);
    }
  }
  return std::hypot(x1 - x0, y1 - y0);
}

inline std::vector<double> mean_xy(const Trajectory& tr) {
  long double sx = 0, sy = 0;
  for (const auto& s : tr.samples) {
    sx += s.x;
    sy += s.y;
  }
  const long double n = tr.samples.size();
  return {static_cast<double>(sx / n), static_cast<double>(sy / n)};
}

inline std::vector<double> std_xy(const Trajectory& tr) {
  const auto mu = mean_xy(tr);
  long double vx = 0, vy = 0;
  for (const auto& s : tr.samples) {
    vx += (s.x - static_cast<long double>(mu[0])) * (s.x - static_cast<long double>(mu[0]));
    vy += (s.y - static_cast<long double>(mu[1])) * (s.y - static_cast<long double>(mu[1]));
  }
  const long double n = tr.samples.size();
  return {static_cast<double>(std::sqrt(vx / n)), static_cast<double>(std::sqrt(vy / n))};
}

// H = -sum p log_k p, computed through natural logs with long double.
inline double entropy(const std::vector<double>& d) {
  long double total = 0;
  for (double v : d) total += v;
  long double h = 0;
  for (double v : d) {
    if (v == 0.0) continue;
    const long double p = v / total;
    h -= p * std::log(p);
  }
  return static_cast<double>(h / std::log(static_cast<long double>(d.size())));
}

inline double cubic(const double* c, double u) { return c[0] + u * (c[1] + u * (c[2] + u * c[3])); }

// Unnormalized Gaussian KDE, profile exp(-r^2 / 2).
inline double kde(const std::vector<double>& x, const std::vector<std::vector<double>>& data, double h) {
  long double f = 0;
  for (const auto& p : data) {
    long double r2 = 0;
    for (std::size_t d = 0; d < x.size(); ++d) r2 += (x[d] - static_cast<long double>(p[d])) * (x[d] - p[d]);
    f += std::exp(-r2 / (2.0L * h * h));
  }
  return static_cast<double>(f);
}

// Weighted mean with Gaussian shadow weights, straight from the definition.
inline std::vector<double> mean_shift_step(const std::vector<double>& x, const std::vector<std::vector<double>>& data,
                                           double h) {
  std::vector<long double> num(x.size(), 0.0L);
  long double den = 0;
  for (const auto& p : data) {
    long double r2 = 0;
    for (std::size_t d = 0; d < x.size(); ++d) r2 += (x[d] - static_cast<long double>(p[d])) * (x[d] - p[d]);
    const long double g = std::exp(-r2 / (2.0L * h * h));
    for (std::size_t d = 0; d < x.size(); ++d) num[d] += g * p[d];
    den += g;
  }
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) out[d] = static_cast<double>(num[d] / den);
  return out;
}

// Local maxima of the 1-D KDE on a uniform grid spanning the data +- 4h.
// Each maximum is the argmax of its basin between neighbouring minima.
inline std::vector<double> kde_grid_modes_1d(const std::vector<double>& data, double h, std::size_t points = 10000) {
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *lo_it - 4.0 * h;
  const double hi = *hi_it + 4.0 * h;
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::vector<double> f(points);
  for (std::size_t g = 0; g < points; ++g) {
    const double x = lo + step * static_cast<double>(g);
    long double s = 0;
    for (double p : data) s += std::exp(-(x - p) * (x - p) / (2.0 * h * h));
    f[g] = static_cast<double>(s);
  }
  std::vector<double> modes;
  for (std::size_t g = 1; g + 1 < points; ++g) {
    if (f[g] > f[g - 1] && f[g] >= f[g + 1]) modes.push_back(lo + step * static_cast<double>(g));
  }
  return modes;
}

inline Trajectory make_trajectory(std::string id, const std::vector<Sample>& samples) {
  return Trajectory{std::move(id), samples};
}

// Random-walk trajectories with random lifespans inside a 100 x 100 box.
inline std::vector<Trajectory> random_trajectories(std::mt19937_64& rng, std::size_t count,
                                                   std::size_t min_len = 10, std::size_t max_len = 40) {
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  std::uniform_real_distribution<double> dt(0.1, 1.0);
  std::normal_distribution<double> step(0.0, 2.0);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::vector<Trajectory> out;
  for (std::size_t k = 0; k < count; ++k) {
    Trajectory tr{std::to_string(k), {}};
    double t = pos(rng), x = pos(rng), y = pos(rng);
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      tr.samples.push_back({t, x, y});
      t += dt(rng);
      x += step(rng);
      y += step(rng);
    }
    out.push_back(std::move(tr));
  }
  return out;
}

}  // namespace oracle

namespace oracle {

// Same KDE as above but kept in extended precision, for comparing values
// along an ascent path where successive differences are tiny.
inline long double kde_ld(const std::vector<double>& x, const std::vector<std::vector<double>>& data, double h) {
  long double f = 0;
  for (const auto& p : data) {
    long double r2 = 0;
    for (std::size_t d = 0; d < x.size(); ++d) r2 += (x[d] - static_cast<long double>(p[d])) * (x[d] - p[d]);
    f += std::exp(-r2 / (2.0L * h * h));
  }
  return f;
}

// Inverse of the 4 x 4 Gram matrix V^T V for a cubic Vandermonde V over the
// given abscissae, by Gauss-Jordan elimination with partial pivoting.
inline std::vector<std::vector<long double>> cubic_gram_inverse(const std::vector<double>& u) {
  long double a[4][8] = {};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      for (double x : u) a[r][c] += std::pow(static_cast<long double>(x), r + c);
    }
    a[r][4 + r] = 1;
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    for (int c = 0; c < 8; ++c) std::swap(a[col][c], a[piv][c]);
    const long double d = a[col][col];
    for (int c = 0; c < 8; ++c) a[col][c] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = a[r][col];
      for (int c = 0; c < 8; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<std::vector<long double>> inv(4, std::vector<long double>(4));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) inv[r][c] = a[r][4 + c];
  }
  return inv;
}

}  // namespace oracle
