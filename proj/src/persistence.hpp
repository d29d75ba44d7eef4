#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mapper.hpp"

namespace dbm {

enum class PointKind { Ord0, Ext0, Ext1, Rel1 };

const char* point_kind_name(PointKind kind);
PointKind point_kind_from_name(const std::string& name);

struct PersistencePoint {
  double birth = 0.0;
  double death = 0.0;
  PointKind kind = PointKind::Ord0;

  double persistence() const { return birth < death ? death - birth : birth - death; }
};

struct PersistenceDiagram {
  std::vector<PersistencePoint> points;

  std::size_t count(PointKind kind) const;
};

// Vertex-function graph in adjacency-list-free form; parallel edges allowed.
struct FilteredGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> values;  // one per vertex
};

// Extended persistence diagram of a graph with a piecewise-linear extension
// of per-vertex values. Computed by reducing the boundary matrix of the
// ascending filtration followed by the descending cone. Zero-persistence
// Ord0/Rel1 pairs, which arise at every regular vertex, are dropped; all
// essential (Ext) points are kept. Equal values are ordered by vertex index.
PersistenceDiagram extended_persistence(const FilteredGraph& graph);

PersistenceDiagram extended_persistence(const MapperGraph& graph);

// Exact bottleneck distance under the L-infinity ground metric with diagonal
// projections; only equal-kind points may be matched.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

// Largest persistence among reference points with no match in the candidate.
// Matching requires equal kind and coordinates within `tol` per axis.
double diagram_gap(const PersistenceDiagram& reference, const PersistenceDiagram& candidate,
                   double tol = 1e-9);

struct ReebOracle {
  MapperGraph graph;        // collapsed fine-resolution standard Mapper
  GomicCover cover;
  double resolution = 0.0;  // realized lens spread of the oracle's slices
  double critical_gap = 0.0;
  std::vector<double> critical_values;
};

// Standard Mapper over a Morse-spaced cover whose resolution sits strictly
// below the smallest gap between distinct critical values of the delta-Rips
// graph, making its diagram a stand-in for the Reeb graph of the complex.
ReebOracle reeb_oracle(const PointCloud& cloud, const LensMap& lens, double delta);

}  // namespace dbm
