#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "density.hpp"
#include "support/datasets.hpp"
#include "support/oracles.hpp"
#include "synthgen.hpp"

using namespace dbm;

namespace {

Dataset three_blob_line(std::uint64_t seed, std::size_t per_blob, int k_unused = 0) {
  (void)k_unused;
  // Three line-shaped groups with different lens densities.
  SplitMix64 rng(seed);
  std::vector<double> coords, lens;
  auto add = [&](double cx, std::size_t count, double lens_hi) {
    for (std::size_t i = 0; i < count; ++i) {
      double x = cx + rng.normal() * 0.3;
      double y = rng.normal() * 0.3;
      double t = rng.uniform(0.0, lens_hi);
      coords.insert(coords.end(), {x, y});
      lens.push_back(t);
    }
  };
  add(0.0, per_blob, 1.0);
  add(10.0, per_blob, 5.0);
  add(20.0, per_blob, 10.0);
  return {PointCloud(std::move(coords), 2), LensMap(std::move(lens)), 0.0};
}

}  // namespace

TEST_CASE("raw inverse density: constant lens gives zeros") {
  PointCloud cloud = testdata::uniform_cloud(3, 30, 2);
  LensMap lens(std::vector<double>(30, 4.2));
  NeighborGraph nbrs = knn(cloud, 5);
  for (double b : raw_inverse_density(lens, nbrs)) CHECK(b == 0.0);
}

TEST_CASE("raw inverse density: spread of the neighbour lens values") {
  // Point 0 has neighbours with lens {1.0, 4.0, 2.5}.
  PointCloud cloud = PointCloud::from_rows({{0.0}, {0.1}, {-0.1}, {0.2}, {5.0}});
  LensMap lens({0.0, 1.0, 4.0, 2.5, 100.0});
  NeighborGraph nbrs = knn(cloud, 3);
  REQUIRE(nbrs.neighbors[0] == std::vector<int>{1, 2, 3});
  std::vector<double> raw = raw_inverse_density(lens, nbrs);
  CHECK(raw[0] == doctest::Approx(3.0));
}

TEST_CASE("raw inverse density: matches a per-point recomputation") {
  Dataset data = three_blob_line(5, 20);
  NeighborGraph nbrs = knn(data.cloud, 10);
  std::vector<double> raw = raw_inverse_density(data.lens, nbrs);
  for (std::size_t i = 0; i < data.cloud.size(); ++i) {
    double lo = data.lens[static_cast<std::size_t>(nbrs.neighbors[i][0])];
    double hi = lo;
    for (int j : nbrs.neighbors[i]) {
      lo = std::min(lo, data.lens[static_cast<std::size_t>(j)]);
      hi = std::max(hi, data.lens[static_cast<std::size_t>(j)]);
    }
    CHECK(raw[i] == doctest::Approx(hi - lo));
  }
}

TEST_CASE("raw inverse density: invariant under lens shifts") {
  Dataset data = three_blob_line(6, 15);
  NeighborGraph nbrs = knn(data.cloud, 8);
  std::vector<double> base = raw_inverse_density(data.lens, nbrs);
  std::vector<double> shifted_values = data.lens.values();
  for (double& t : shifted_values) t += 17.5;
  std::vector<double> shifted = raw_inverse_density(LensMap(shifted_values), nbrs);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(shifted[i] == doctest::Approx(base[i]));
  }
}

TEST_CASE("smooth density: constant input is a fixed point") {
  PointCloud cloud = testdata::uniform_cloud(2, 40, 2);
  std::vector<double> raw(40, 3.3);
  for (double v : smooth_density(raw, cloud)) CHECK(v == doctest::Approx(3.3));
}

TEST_CASE("smooth density: single point passes through") {
  PointCloud cloud = PointCloud::from_rows({{1.0, 2.0}});
  std::vector<double> raw{7.0};
  CHECK(smooth_density(raw, cloud)[0] == doctest::Approx(7.0));
}

TEST_CASE("smooth density: matches the direct double loop") {
  PointCloud cloud = testdata::uniform_cloud(2, 100, 2);
  std::vector<double> raw = testdata::uniform_values(22, 100, 0.0, 2.0);
  std::vector<double> smoothed = smooth_density(raw, cloud);

  // Independent dense evaluation of the normalized cosine-window convolution.
  std::vector<double> width(2);
  for (std::size_t d = 0; d < 2; ++d) {
    double lo = cloud.coord(0, d), hi = lo;
    for (std::size_t i = 1; i < cloud.size(); ++i) {
      lo = std::min(lo, cloud.coord(i, d));
      hi = std::max(hi, cloud.coord(i, d));
    }
    width[d] = (hi - lo) / 10.0;
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      double w = 1.0;
      for (std::size_t d = 0; d < 2; ++d) {
        double u = std::abs(cloud.coord(i, d) - cloud.coord(j, d)) / width[d];
        w *= u < 1.0 ? 0.5 * (1.0 + std::cos(std::numbers::pi * u)) : 0.0;
      }
      num += raw[j] * w;
      den += w;
    }
    CHECK(smoothed[i] == doctest::Approx(num / den).epsilon(1e-12));
  }
}

TEST_CASE("smooth density: output stays within the raw range") {
  PointCloud cloud = testdata::uniform_cloud(13, 60, 3);
  std::vector<double> raw = testdata::uniform_values(14, 60, 1.0, 9.0);
  auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  for (double v : smooth_density(raw, cloud)) {
    CHECK(v >= *lo - 1e-12);
    CHECK(v <= *hi + 1e-12);
  }
}

TEST_CASE("width multiplier: zero sensitivity recovers standard Mapper") {
  DensityProfile profile;
  profile.smoothed = {0.1, 0.5, 2.0};
  profile.mean_mu = 0.8;
  profile.std_sigma = 0.6;
  WidthScaler scaler{3.0, 0.0};
  for (double beta : {0.0, 0.5, 10.0, 1e6}) {
    CHECK(width_multiplier(beta, profile, scaler) == 1.0);
  }
}

TEST_CASE("width multiplier: midpoint value at the mean") {
  DensityProfile profile;
  profile.mean_mu = 1.0;
  profile.std_sigma = 0.5;
  WidthScaler scaler{3.0, 1.0};
  CHECK(width_multiplier(1.0, profile, scaler) == doctest::Approx(2.0));
}

TEST_CASE("width multiplier: saturates at c_max") {
  DensityProfile profile;
  profile.mean_mu = 1.0;
  profile.std_sigma = 0.5;
  WidthScaler scaler{3.0, 1.0};
  CHECK(width_multiplier(1e9, profile, scaler) == doctest::Approx(3.0));
}

TEST_CASE("width multiplier: zero sigma falls back to 1") {
  DensityProfile profile;
  profile.mean_mu = 1.0;
  profile.std_sigma = 0.0;
  WidthScaler scaler{4.0, 2.0};
  CHECK(width_multiplier(5.0, profile, scaler) == 1.0);
}

TEST_CASE("width multiplier: monotone in beta and bounded") {
  DensityProfile profile;
  profile.mean_mu = 0.6;
  profile.std_sigma = 0.25;
  for (double s : {0.5, 1.0, 2.0}) {
    WidthScaler scaler{2.5, s};
    double prev = 0.0;
    for (double beta = 0.0; beta <= 3.0; beta += 0.05) {
      double c = width_multiplier(beta, profile, scaler);
      CHECK(c >= prev);
      CHECK(c >= 1.0);
      CHECK(c <= std::pow(2.5, s) + 1e-12);
      prev = c;
    }
  }
}

TEST_CASE("density profile: lower density components score higher") {
  // Ordering reproduces the smallest-component-has-largest-beta effect.
  ThreeComponentSpec spec;
  spec.seed = 5;
  spec.sizes = {600, 240, 90};
  Dataset data = gen_three_component(spec);
  DensityProfile profile = make_density_profile(data.cloud, data.lens, knn(data.cloud, 10));

  double mean_large = 0.0, mean_mid = 0.0, mean_small = 0.0;
  for (std::size_t i = 0; i < 600; ++i) mean_large += profile.smoothed[i];
  for (std::size_t i = 600; i < 840; ++i) mean_mid += profile.smoothed[i];
  for (std::size_t i = 840; i < 930; ++i) mean_small += profile.smoothed[i];
  mean_large /= 600;
  mean_mid /= 240;
  mean_small /= 90;
  CHECK(mean_large < mean_mid);
  CHECK(mean_mid < mean_small);
}
