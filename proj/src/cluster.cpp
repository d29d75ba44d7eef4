#include "cluster.hpp"

#include <algorithm>
#include <limits>

#include "union_find.hpp"

namespace dbm {

namespace {

// Maps union-find roots to contiguous ids ordered by smallest member index.
std::vector<int> canonical_labels(UnionFind& uf, std::size_t n, int* cluster_count) {
  std::vector<int> labels(n, ClusterAssignment::kNoise);
  int next = 0;
  std::vector<int> root_label(n, ClusterAssignment::kNoise);
  for (std::size_t i = 0; i < n; ++i) {
    int root = uf.find(static_cast<int>(i));
    if (root_label[root] == ClusterAssignment::kNoise) root_label[root] = next++;
    labels[i] = root_label[root];
  }
  *cluster_count = next;
  return labels;
}

}  // namespace

ClusterAssignment single_linkage(const PointCloud& points, double delta) {
  require(delta > 0.0, errc::invalid_parameter, "delta must be positive");
  std::size_t n = points.size();
  UnionFind uf(n);
  double d2 = delta * delta;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (squared_distance(points.point(i), points.point(j)) <= d2) {
        uf.merge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  ClusterAssignment result;
  result.labels = canonical_labels(uf, n, &result.cluster_count);
  return result;
}

ClusterAssignment weighted_dbscan(const PointCloud& points, const std::vector<double>& weights,
                                  double eps, double min_weight) {
  require(eps > 0.0, errc::invalid_parameter, "eps must be positive");
  require(min_weight > 0.0, errc::invalid_parameter, "min_weight must be positive");
  std::size_t n = points.size();
  require(weights.size() == n, errc::invalid_parameter, "weights must match the points");
  for (double w : weights)
    require(w > 0.0, errc::invalid_parameter, "weights must be positive");

  double e2 = eps * eps;
  std::vector<std::vector<int>> nbrs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (squared_distance(points.point(i), points.point(j)) <= e2) {
        nbrs[i].push_back(static_cast<int>(j));
        nbrs[j].push_back(static_cast<int>(i));
      }
    }
  }

  std::vector<bool> core(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double mass = weights[i];
    for (int j : nbrs[i]) mass += weights[static_cast<std::size_t>(j)];
    core[i] = mass >= min_weight;
  }

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    for (int j : nbrs[i]) {
      if (core[static_cast<std::size_t>(j)]) uf.merge(static_cast<int>(i), j);
    }
  }

  ClusterAssignment result;
  result.labels.assign(n, ClusterAssignment::kNoise);
  int next = 0;
  std::vector<int> root_label(n, ClusterAssignment::kNoise);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    int root = uf.find(static_cast<int>(i));
    if (root_label[root] == ClusterAssignment::kNoise) root_label[root] = next++;
    result.labels[i] = root_label[root];
  }
  result.cluster_count = next;

  // Border points attach to the lowest adjacent core cluster.
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    int best = std::numeric_limits<int>::max();
    for (int j : nbrs[i]) {
      if (core[static_cast<std::size_t>(j)]) best = std::min(best, result.labels[j]);
    }
    if (best != std::numeric_limits<int>::max()) result.labels[i] = best;
  }
  return result;
}

ClustererKind clusterer_from_name(const std::string& name) {
  if (name == "single-linkage") return ClustererKind::single_linkage;
  if (name == "dbscan") return ClustererKind::dbscan;
  fail(errc::invalid_parameter, "unknown clusterer '" + name + "' (single-linkage|dbscan)");
}

const char* clusterer_name(ClustererKind kind) {
  return kind == ClustererKind::single_linkage ? "single-linkage" : "dbscan";
}

ClusterAssignment cluster_points(const PointCloud& points, const std::vector<double>& weights,
                                 const ClustererSpec& spec) {
  if (spec.kind == ClustererKind::single_linkage) {
    return single_linkage(points, spec.delta);
  }
  if (weights.empty()) {
    return weighted_dbscan(points, std::vector<double>(points.size(), 1.0), spec.eps,
                           spec.min_weight);
  }
  return weighted_dbscan(points, weights, spec.eps, spec.min_weight);
}

}  // namespace dbm
