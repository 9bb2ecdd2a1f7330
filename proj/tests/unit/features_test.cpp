#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trajanom/error.hpp"
#include "trajanom/features.hpp"

using namespace trajanom;

namespace {

ResampledTrajectory on_cubic(const std::array<double, 8>& c, std::size_t n = 32) {
  ResampledTrajectory r{"p", {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    r.points.push_back({oracle::cubic(c.data(), u), oracle::cubic(c.data() + 4, u)});
  }
  return r;
}

Trajectory line(std::string id, double x0, double y0, double dx, double dy, int n = 10) {
  Trajectory tr{std::move(id), {}};
  for (int i = 0; i < n; ++i) tr.samples.push_back({static_cast<double>(i), x0 + dx * i, y0 + dy * i});
  return tr;
}

}  // namespace

TEST(StDistance, IdentityAndOffset) {
  const auto a = resample(line("a", 0, 0, 1, 0.5), 32);
  auto b = a;
  EXPECT_EQ(st_distance(a, b), 0.0);
  for (auto& p : b.points) {
    p.x += 3;
    p.y += 4;
  }
  EXPECT_NEAR(st_distance(a, b), 5.0, 1e-12);
}

TEST(StDistance, MismatchedResolution) {
  const auto tr = line("a", 0, 0, 1, 1);
  try {
    st_distance(resample(tr, 16), resample(tr, 32));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MismatchedResolution);
  }
}

TEST(StDistance, MatchesSummationOracleAndIsPseudoMetric) {
  std::mt19937_64 rng(17);
  const auto trajs = oracle::random_trajectories(rng, 25);
  std::vector<ResampledTrajectory> r;
  for (const auto& t : trajs) r.push_back(resample(t, 32));
  const auto m = st_distance_matrix(r);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      EXPECT_NEAR(st_distance(r[i], r[j]), oracle::st_distance(r[i], r[j]), 1e-12);
      EXPECT_EQ(m(i, j), m(j, i));
      EXPECT_GE(m(i, j), 0.0);
      for (std::size_t k = 0; k < r.size(); ++k) EXPECT_LE(m(i, k), m(i, j) + m(j, k) + 1e-9);
    }
  }
}

TEST(Density, IdenticalTrajectories) {
  const Scene s({line("a", 0, 0, 1, 1), line("b", 0, 0, 1, 1), line("c", 0, 0, 1, 1)});
  const auto f = density_feature(s, FeatureConfig{});
  ASSERT_EQ(f.size(), 3u);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index e = 0; e < 3; ++e) EXPECT_EQ(f.rows(i, e), 2.0);
  }
}

TEST(Density, FarApartTrajectories) {
  const Scene s({line("a", 0, 0, 0.1, 0), line("b", 100, 100, 0.1, 0)});
  const auto f = density_feature(s, FeatureConfig{});
  EXPECT_TRUE((f.rows.array() == 0.0).all());
}

TEST(Density, MatchesBruteForceAndIsMonotoneInEpsilon) {
  std::mt19937_64 rng(23);
  const FeatureConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const auto trajs = oracle::random_trajectories(rng, 20);
    const Scene scene(trajs);
    std::vector<ResampledTrajectory> r;
    for (const auto& t : scene.trajectories()) r.push_back(resample(t, 32));
    const double diag = oracle::bbox_diagonal(trajs);
    const auto expected = oracle::density_counts(
        r, {cfg.epsilon_fractions[0] * diag, cfg.epsilon_fractions[1] * diag, cfg.epsilon_fractions[2] * diag});
    const auto f = density_feature(scene, cfg);
    for (std::size_t j = 0; j < r.size(); ++j) {
      for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(f.rows(j, e), expected[j][e]);
      EXPECT_LE(f.rows(j, 0), f.rows(j, 1));
      EXPECT_LE(f.rows(j, 1), f.rows(j, 2));
    }
  }
}

TEST(Density, StrictInequalityAtRadius) {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  const auto f = density_feature(d, {0.5, 1.0, 2.0});
  EXPECT_EQ(f.rows(0, 0), 0);
  EXPECT_EQ(f.rows(0, 1), 0);  // d == eps is not a neighbour
  EXPECT_EQ(f.rows(0, 2), 1);
}

TEST(Shape, ExactLine) {
  const auto c = shape_feature(on_cubic({0, 1, 0, 0, 0, 0, 0, 0}));
  const std::array<double, 8> want{0, 1, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(c[i], want[i], 1e-12);
}

TEST(Shape, Stationary) {
  const auto c = shape_feature(on_cubic({2, 0, 0, 0, 3, 0, 0, 0}));
  const std::array<double, 8> want{2, 0, 0, 0, 3, 0, 0, 0};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(c[i], want[i], 1e-12);
}

TEST(Shape, PlantedCoefficientsRecovered) {
  const std::array<double, 8> planted{1, -2, 0.5, 3, 0, 1, 1, -1};
  const auto c = shape_feature(on_cubic(planted));
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(c[i], planted[i], 1e-6);
}

TEST(Shape, ZeroResidualOnRandomCubics) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> coef(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 8> planted;
    for (auto& v : planted) v = coef(rng);
    const auto r = on_cubic(planted);
    const auto c = shape_feature(r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double u = static_cast<double>(i) / 31.0;
      EXPECT_NEAR(oracle::cubic(c.data(), u), r.points[i].x, 1e-8);
      EXPECT_NEAR(oracle::cubic(c.data() + 4, u), r.points[i].y, 1e-8);
    }
  }
}

TEST(MeanPosition, Examples) {
  const auto m = mean_position_feature(Trajectory{"a", {{0, 0, 0}, {1, 2, 2}}});
  EXPECT_EQ(m[0], 1.0);
  EXPECT_EQ(m[1], 1.0);
  const auto c = mean_position_feature(Trajectory{"b", {{0, 5, 7}, {1, 5, 7}, {2, 5, 7}}});
  EXPECT_EQ(c[0], 5.0);
  EXPECT_EQ(c[1], 7.0);
}

TEST(StdDev, Examples) {
  const auto z = stddev_feature(Trajectory{"a", {{0, 5, 7}, {1, 5, 7}}});
  EXPECT_EQ(z[0], 0.0);
  EXPECT_EQ(z[1], 0.0);
  const auto s = stddev_feature(Trajectory{"b", {{0, 0, 4}, {1, 2, 4}}});
  EXPECT_DOUBLE_EQ(s[0], 1.0);
  EXPECT_EQ(s[1], 0.0);
}

TEST(MeanAndStd, MatchOracles) {
  std::mt19937_64 rng(31);
  for (const auto& tr : oracle::random_trajectories(rng, 50)) {
    const auto m = mean_position_feature(tr);
    const auto s = stddev_feature(tr);
    const auto om = oracle::mean_xy(tr);
    const auto os = oracle::std_xy(tr);
    EXPECT_NEAR(m[0], om[0], 1e-12);
    EXPECT_NEAR(m[1], om[1], 1e-12);
    EXPECT_NEAR(s[0], os[0], 1e-10);
    EXPECT_NEAR(s[1], os[1], 1e-10);
  }
}

TEST(ZScore, SymmetricPairAndConstantColumn) {
  FeatureMatrix m{FeatureSpace::MeanPosition, Eigen::MatrixXd(2, 2), std::nullopt};
  m.rows << 0, 4, 2, 4;
  const auto z = zscore_normalize(m);
  EXPECT_DOUBLE_EQ(z.rows(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(z.rows(1, 0), 1.0);
  EXPECT_EQ(z.rows(0, 1), 0.0);
  EXPECT_EQ(z.rows(1, 1), 0.0);
  ASSERT_TRUE(z.normalization);
  EXPECT_DOUBLE_EQ(z.normalization->mean[0], 1.0);
  EXPECT_DOUBLE_EQ(z.normalization->stddev[0], 1.0);
  EXPECT_EQ(z.normalization->stddev[1], 0.0);
}

TEST(ZScore, MomentsOfRandomMatrix) {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g(5, 3);
  FeatureMatrix m{FeatureSpace::Shape, Eigen::MatrixXd(60, 8), std::nullopt};
  for (Eigen::Index i = 0; i < m.rows.size(); ++i) m.rows.data()[i] = g(rng);
  const auto z = zscore_normalize(m);
  for (Eigen::Index c = 0; c < 8; ++c) {
    long double mean = 0, var = 0;
    for (Eigen::Index r = 0; r < 60; ++r) mean += z.rows(r, c);
    mean /= 60;
    for (Eigen::Index r = 0; r < 60; ++r) var += (z.rows(r, c) - mean) * (z.rows(r, c) - mean);
    EXPECT_NEAR(static_cast<double>(mean), 0.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(std::sqrt(var / 60)), 1.0, 1e-12);
  }
}

TEST(Equivariance, TranslationAndScale) {
  std::mt19937_64 rng(41);
  const auto trajs = oracle::random_trajectories(rng, 15);
  const double dx = 12.5, dy = -7.25, s = 3.0;
  auto shifted = trajs, scaled = trajs;
  for (auto& tr : shifted) {
    for (auto& p : tr.samples) {
      p.x += dx;
      p.y += dy;
    }
  }
  for (auto& tr : scaled) {
    for (auto& p : tr.samples) {
      p.x *= s;
      p.y *= s;
    }
  }
  const FeatureConfig cfg;
  const Scene a(trajs), b(shifted), c(scaled);
  EXPECT_EQ(density_feature(a, cfg).rows, density_feature(b, cfg).rows);
  EXPECT_EQ(density_feature(a, cfg).rows, density_feature(c, cfg).rows);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ma = mean_position_feature(a[i]), mb = mean_position_feature(b[i]);
    EXPECT_NEAR(mb[0] - ma[0], dx, 1e-9);
    EXPECT_NEAR(mb[1] - ma[1], dy, 1e-9);
    const auto sa = stddev_feature(a[i]), sb = stddev_feature(b[i]);
    EXPECT_NEAR(sa[0], sb[0], 1e-9);
    EXPECT_NEAR(sa[1], sb[1], 1e-9);
    const auto fa = shape_feature(resample(a[i], 32)), fb = shape_feature(resample(b[i], 32));
    EXPECT_NEAR(fb[0] - fa[0], dx, 1e-8);
    EXPECT_NEAR(fb[4] - fa[4], dy, 1e-8);
    for (int k : {1, 2, 3, 5, 6, 7}) EXPECT_NEAR(fb[k], fa[k], 1e-7);
    EXPECT_NEAR(st_distance(resample(c[i], 32), resample(c[0], 32)),
                s * st_distance(resample(a[i], 32), resample(a[0], 32)), 1e-9);
  }
}

TEST(FeatureMatrices, ShapesAndOrder) {
  std::mt19937_64 rng(43);
  const Scene scene(oracle::random_trajectories(rng, 12));
  const auto all = build_feature_matrices(scene, FeatureConfig{});
  for (std::size_t s = 0; s < 4; ++s) {
    EXPECT_EQ(all[s].space, kFeatureSpaces[s]);
    EXPECT_EQ(all[s].size(), scene.size());
    EXPECT_EQ(all[s].dim(), dimension(kFeatureSpaces[s]));
    EXPECT_TRUE(all[s].rows.allFinite());
  }
  EXPECT_EQ(dimension(FeatureSpace::Density), 3u);
  EXPECT_EQ(dimension(FeatureSpace::Shape), 8u);
  EXPECT_EQ(dimension(FeatureSpace::MeanPosition), 2u);
  EXPECT_EQ(dimension(FeatureSpace::StdDev), 2u);
}

TEST(FeatureConfig, RejectsNonIncreasingFractions) {
  FeatureConfig cfg;
  cfg.epsilon_fractions = {0.1, 0.1, 0.2};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.epsilon_fractions = {0.0, 0.1, 0.2};
  EXPECT_THROW(cfg.validate(), Error);
}
