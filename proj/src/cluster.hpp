#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"

namespace dbm {

// Cluster labels for the points handed to one clustering call. Ids are
// contiguous from 0, ordered by each cluster's smallest point position;
// kNoise marks points excluded from every cluster.
struct ClusterAssignment {
  static constexpr int kNoise = -1;

  std::vector<int> labels;
  int cluster_count = 0;
};

// Connected components of the delta-Rips 1-skeleton (chains of pairwise
// distances <= delta). Never produces noise.
ClusterAssignment single_linkage(const PointCloud& points, double delta);

// DBSCAN with weighted core condition: a point is core when the weights
// within eps (its own included) sum to at least min_weight. Border points
// join the adjacent core cluster with the lowest id; the rest are noise.
ClusterAssignment weighted_dbscan(const PointCloud& points, const std::vector<double>& weights,
                                  double eps, double min_weight);

enum class ClustererKind { single_linkage, dbscan };

ClustererKind clusterer_from_name(const std::string& name);
const char* clusterer_name(ClustererKind kind);

// Named clustering strategy; new algorithms slot in here.
struct ClustererSpec {
  ClustererKind kind = ClustererKind::single_linkage;
  double delta = 1.0;        // single-linkage radius
  double eps = 0.5;          // dbscan neighbourhood radius
  double min_weight = 5.0;   // dbscan core threshold

  // Radius at which two points count as adjacent, used when splitting
  // overlap regions into connected pieces.
  double link_radius() const { return kind == ClustererKind::single_linkage ? delta : eps; }
};

// weights may be empty (treated as all ones); only dbscan consumes them.
ClusterAssignment cluster_points(const PointCloud& points, const std::vector<double>& weights,
                                 const ClustererSpec& spec);

}  // namespace dbm
