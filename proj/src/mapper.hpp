#pragma once

#include <utility>
#include <vector>

#include "cluster.hpp"
#include "cover.hpp"
#include "density.hpp"
#include "kernel.hpp"

namespace dbm {

struct MapperVertex {
  int interval_index = 0;
  int cluster_id = 0;
  std::vector<int> members;  // point indices, ascending
  double fbar = 0.0;         // min lens + (max lens - min lens) / 2 over members
};

struct MapperEdge {
  int a = 0;  // vertex in the lower interval
  int b = 0;  // vertex in the next interval
  double weight = 0.0;
  int multiplicity = 1;
};

// Weighted (multi)graph over per-slice clusters. In multigraph form each edge
// is one connected piece of an overlap region; collapsing merges parallels.
struct MapperGraph {
  std::vector<MapperVertex> vertices;
  std::vector<MapperEdge> edges;
  bool is_multigraph = true;
};

enum class WeightMode { count, kernel };

WeightMode weight_mode_from_name(const std::string& name);
const char* weight_mode_name(WeightMode mode);

struct MapperOptions {
  KernelSpec kernel;
  WidthScaler scaler;
  ClustererSpec clusterer;
  WeightMode weight_mode = WeightMode::count;
  bool use_kernel_weights = false;  // pass kernel values to the clusterer
  int knn_k = 15;                   // density neighbourhood size
};

// Full density-based Mapper pass: density profile, kerneled cover, per-slice
// clustering, and edges over consecutive overlaps. `profile` may supply a
// precomputed density profile (required fields: smoothed, mean_mu, std_sigma).
MapperGraph build_mapper(const PointCloud& cloud, const LensMap& lens, const GomicCover& cover,
                         const MapperOptions& options,
                         const DensityProfile* profile = nullptr,
                         std::vector<KerneledSet>* sets_out = nullptr,
                         std::vector<double>* multipliers_out = nullptr);

MapperGraph collapse_multigraph(const MapperGraph& graph);

// Rips edges at radius delta whose lens span contains an entire overlap of
// consecutive cover intervals; an empty result certifies the discrete graph
// matches the Rips-complex Mapper.
std::vector<std::pair<int, int>> find_intersection_crossing_edges(const PointCloud& cloud,
                                                                  const LensMap& lens,
                                                                  double delta,
                                                                  const GomicCover& cover);

std::size_t connected_components(const MapperGraph& graph);

// (betti0, betti1); betti1 counts independent cycles, so parallel edges in a
// multigraph each contribute.
std::pair<std::size_t, std::size_t> betti_numbers(const MapperGraph& graph);

}  // namespace dbm
