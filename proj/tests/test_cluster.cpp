#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "cluster.hpp"
#include "support/datasets.hpp"
#include "support/oracles.hpp"

using namespace dbm;

namespace {

// Compare two labelings up to a bijective relabeling; noise must match.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] < 0) != (b[i] < 0)) return false;
    if (a[i] < 0) continue;
    auto [it, inserted] = fwd.emplace(a[i], b[i]);
    if (!inserted && it->second != b[i]) return false;
    auto [jt, jnserted] = bwd.emplace(b[i], a[i]);
    if (!jnserted && jt->second != a[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("single linkage: threshold boundary is inclusive") {
  PointCloud cloud = PointCloud::from_rows({{0.0}, {3.0}});
  CHECK(single_linkage(cloud, 2.0).cluster_count == 2);
  CHECK(single_linkage(cloud, 3.0).cluster_count == 1);
}

TEST_CASE("single linkage: two blobs match the closure oracle") {
  PointCloud blob1 = testdata::gaussian_blob(4, 50, 0.0, 0.0, 1.0);
  PointCloud blob2 = testdata::gaussian_blob(44, 50, 10.0, 0.0, 1.0);
  PointCloud cloud = testdata::merge(blob1, blob2);

  ClusterAssignment fast = single_linkage(cloud, 3.0);
  std::vector<int> slow = oracle::closure_clusters(cloud, 3.0);
  CHECK(same_partition(fast.labels, slow));
  CHECK(fast.cluster_count == 2);

  // Blob membership matches the construction.
  for (std::size_t i = 1; i < 50; ++i) CHECK(fast.labels[i] == fast.labels[0]);
  for (std::size_t i = 51; i < 100; ++i) CHECK(fast.labels[i] == fast.labels[50]);
  CHECK(fast.labels[0] != fast.labels[50]);
}

TEST_CASE("single linkage: chained points form one cluster") {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 12; ++i) rows.push_back({0.9 * i});
  ClusterAssignment result = single_linkage(PointCloud::from_rows(rows), 1.0);
  CHECK(result.cluster_count == 1);
}

TEST_CASE("single linkage: labels invariant under reordering and rigid motion") {
  PointCloud cloud = testdata::uniform_cloud(15, 60, 2);
  ClusterAssignment base = single_linkage(cloud, 0.15);

  std::size_t n = cloud.size();
  std::vector<std::vector<double>> reversed(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cloud.point(n - 1 - i);
    reversed[i] = {p.begin(), p.end()};
  }
  ClusterAssignment flipped = single_linkage(PointCloud::from_rows(reversed), 0.15);
  std::vector<int> remapped(n);
  for (std::size_t i = 0; i < n; ++i) remapped[i] = flipped.labels[n - 1 - i];
  CHECK(same_partition(base.labels, remapped));

  // Rotate by 90 degrees and translate.
  std::vector<std::vector<double>> moved(n);
  for (std::size_t i = 0; i < n; ++i) {
    moved[i] = {-cloud.coord(i, 1) + 5.0, cloud.coord(i, 0) - 2.0};
  }
  ClusterAssignment rotated = single_linkage(PointCloud::from_rows(moved), 0.15);
  CHECK(same_partition(base.labels, rotated.labels));
}

TEST_CASE("single linkage: cluster count shrinks as delta grows") {
  PointCloud cloud = testdata::uniform_cloud(19, 80, 2);
  int prev = std::numeric_limits<int>::max();
  for (double delta : {0.02, 0.05, 0.1, 0.2, 0.5, 1.5}) {
    int count = single_linkage(cloud, delta).cluster_count;
    CHECK(count <= prev);
    prev = count;
  }
}

TEST_CASE("weighted dbscan: unit weights match classical dbscan") {
  PointCloud blob1 = testdata::gaussian_blob(9, 120, 0.0, 0.0, 0.8);
  PointCloud blob2 = testdata::gaussian_blob(99, 80, 6.0, 0.0, 0.8);
  PointCloud cloud = testdata::merge(blob1, blob2);

  for (int min_samples : {3, 5, 8}) {
    ClusterAssignment fast = weighted_dbscan(cloud, std::vector<double>(cloud.size(), 1.0),
                                             0.5, static_cast<double>(min_samples));
    std::vector<int> slow = oracle::classical_dbscan(cloud, 0.5, min_samples);
    // Core/noise status and the partition must agree; border attachment may
    // differ between implementations, so compare noise sets and core labels.
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      CHECK((fast.labels[i] < 0) == (slow[i] < 0));
    }
    CHECK(same_partition(fast.labels, slow));
  }
}

TEST_CASE("weighted dbscan: single isolated point below threshold is noise") {
  PointCloud cloud = PointCloud::from_rows({{0.0, 0.0}});
  ClusterAssignment result = weighted_dbscan(cloud, {1.0}, 0.5, 2.0);
  CHECK(result.cluster_count == 0);
  CHECK(result.labels[0] == ClusterAssignment::kNoise);
}

TEST_CASE("weighted dbscan: downweighted bridge separates two blobs") {
  // Two tight groups joined by a sparse bridge whose points carry low weight.
  // Exactly representable quarter-grid coordinates keep boundary distances
  // deterministic.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 5; ++i) rows.push_back({0.25 * i, 0.0});          // left block
  for (int i = 0; i < 4; ++i) rows.push_back({1.75 + 0.75 * i, 0.0});   // bridge
  for (int i = 0; i < 5; ++i) rows.push_back({5.0 + 0.25 * i, 0.0});    // right block
  PointCloud cloud = PointCloud::from_rows(rows);

  std::vector<double> weights(cloud.size(), 1.0);
  for (int i = 5; i < 9; ++i) weights[i] = 0.05;

  double eps = 1.0, min_weight = 2.2;
  ClusterAssignment result = weighted_dbscan(cloud, weights, eps, min_weight);

  // Direct weight sums certify the bridge points are not cores.
  for (int i = 5; i < 9; ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      if (oracle::dist(cloud, i, static_cast<int>(j)) <= eps) mass += weights[j];
    }
    CHECK(mass < min_weight);
  }
  CHECK(result.cluster_count == 2);
  CHECK(result.labels[0] == result.labels[4]);
  CHECK(result.labels[9] == result.labels[13]);
  CHECK(result.labels[0] != result.labels[9]);
  CHECK(result.labels[6] == ClusterAssignment::kNoise);
  CHECK(result.labels[7] == ClusterAssignment::kNoise);

  // With unit weights the same geometry is one cluster.
  ClusterAssignment merged =
      weighted_dbscan(cloud, std::vector<double>(cloud.size(), 1.0), eps, min_weight);
  CHECK(merged.cluster_count == 1);
}

TEST_CASE("weighted dbscan: uniform weight w equals classical with scaled threshold") {
  PointCloud cloud = testdata::uniform_cloud(27, 150, 2);
  double w = 0.25;
  double eps = 0.12;
  double min_weight = 1.2;  // ceil(1.2 / 0.25) = 5
  ClusterAssignment scaled =
      weighted_dbscan(cloud, std::vector<double>(cloud.size(), w), eps, min_weight);
  std::vector<int> classical = oracle::classical_dbscan(cloud, eps, 5);

  // Core points: mass >= min_weight, computed directly.
  std::vector<bool> core(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      if (oracle::dist(cloud, static_cast<int>(i), static_cast<int>(j)) <= eps) mass += w;
    }
    core[i] = mass >= min_weight;
  }

  // Noise agrees everywhere; the partition agrees on core points. Border
  // points may attach to either adjacent cluster depending on scan order,
  // so require only that each sits next to a core of its assigned cluster.
  std::vector<int> core_a, core_b;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    CHECK((scaled.labels[i] < 0) == (classical[i] < 0));
    if (core[i]) {
      core_a.push_back(scaled.labels[i]);
      core_b.push_back(classical[i]);
    } else if (scaled.labels[i] >= 0) {
      bool adjacent = false;
      for (std::size_t j = 0; j < cloud.size(); ++j) {
        if (core[j] && scaled.labels[j] == scaled.labels[i] &&
            oracle::dist(cloud, static_cast<int>(i), static_cast<int>(j)) <= eps) {
          adjacent = true;
        }
      }
      CHECK(adjacent);
    }
  }
  CHECK(same_partition(core_a, core_b));
}

TEST_CASE("weighted dbscan: border points take the lowest adjacent cluster id") {
  // One non-core point exactly between two blocks, reachable from a core of
  // each; quarter-grid coordinates make the reach distances exact.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 5; ++i) rows.push_back({0.25 * i, 0.0});  // 0 .. 1
  for (int i = 0; i < 5; ++i) rows.push_back({5.0 + 0.25 * i, 0.0});
  rows.push_back({3.0, 0.0});
  PointCloud cloud = PointCloud::from_rows(rows);

  std::vector<double> weights(cloud.size(), 1.0);
  ClusterAssignment result = weighted_dbscan(cloud, weights, 2.25, 6.0);
  REQUIRE(result.cluster_count == 2);
  CHECK(result.labels[0] == 0);
  CHECK(result.labels[9] == 1);
  CHECK(result.labels[10] == 0);  // tie resolved toward the lower id
}

TEST_CASE("cluster parameter validation") {
  PointCloud cloud = PointCloud::from_rows({{0.0}});
  CHECK_THROWS_AS(single_linkage(cloud, 0.0), error);
  CHECK_THROWS_AS(weighted_dbscan(cloud, {1.0}, 0.0, 1.0), error);
  CHECK_THROWS_AS(weighted_dbscan(cloud, {1.0}, 1.0, 0.0), error);
  CHECK_THROWS_AS(weighted_dbscan(cloud, {0.0}, 1.0, 1.0), error);
  CHECK_THROWS_AS(clusterer_from_name("kmeans"), error);
}
