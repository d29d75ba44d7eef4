#include "mapper.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "union_find.hpp"

namespace dbm {

WeightMode weight_mode_from_name(const std::string& name) {
  if (name == "count") return WeightMode::count;
  if (name == "kernel") return WeightMode::kernel;
  fail(errc::invalid_parameter, "unknown weight mode '" + name + "' (count|kernel)");
}

const char* weight_mode_name(WeightMode mode) {
  return mode == WeightMode::count ? "count" : "kernel";
}

namespace {

struct Slice {
  std::vector<int> points;          // member point indices, ascending
  std::vector<double> weights;      // kernel weight per member
  ClusterAssignment clusters;
  std::vector<int> vertex_of_cluster;  // cluster id -> vertex index
};

double midpoint_value(const LensMap& lens, const std::vector<int>& members) {
  double lo = lens[static_cast<std::size_t>(members.front())];
  double hi = lo;
  for (int i : members) {
    double t = lens[static_cast<std::size_t>(i)];
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return lo + (hi - lo) / 2.0;
}

}  // namespace

MapperGraph build_mapper(const PointCloud& cloud, const LensMap& lens, const GomicCover& cover,
                         const MapperOptions& options, const DensityProfile* profile,
                         std::vector<KerneledSet>* sets_out,
                         std::vector<double>* multipliers_out) {
  require(lens.size() == cloud.size(), errc::invalid_parameter,
          "lens must match the point cloud");
  require(!cover.intervals.empty(), errc::invalid_parameter, "cover is empty");

  std::vector<double> multipliers;
  if (options.scaler.sensitivity == 0.0) {
    multipliers.assign(cloud.size(), 1.0);  // standard Mapper: skip the density pass
  } else if (profile != nullptr) {
    multipliers = width_multipliers(*profile, options.scaler);
  } else {
    DensityProfile local = make_density_profile(cloud, lens, knn(cloud, options.knn_k));
    multipliers = width_multipliers(local, options.scaler);
  }

  std::vector<KerneledSet> sets =
      build_kerneled_cover(lens, cover, options.kernel, multipliers);

  std::size_t n_slices = sets.size();
  std::vector<Slice> slices(n_slices);
  parallel_for(n_slices, [&](std::size_t i) {
    Slice& slice = slices[i];
    slice.points.reserve(sets[i].members.size());
    slice.weights.reserve(sets[i].members.size());
    for (const auto& m : sets[i].members) {
      slice.points.push_back(m.index);
      slice.weights.push_back(m.weight);
    }
    if (slice.points.empty()) return;  // vertexless slice; may disconnect the graph
    PointCloud sub = cloud.subset(slice.points);
    slice.clusters = cluster_points(
        sub, options.use_kernel_weights ? slice.weights : std::vector<double>{},
        options.clusterer);
  });

  MapperGraph graph;
  graph.is_multigraph = true;
  for (std::size_t i = 0; i < n_slices; ++i) {
    Slice& slice = slices[i];
    slice.vertex_of_cluster.assign(
        static_cast<std::size_t>(std::max(slice.clusters.cluster_count, 0)), -1);
    for (int c = 0; c < slice.clusters.cluster_count; ++c) {
      MapperVertex v;
      v.interval_index = static_cast<int>(i);
      v.cluster_id = c;
      for (std::size_t p = 0; p < slice.points.size(); ++p) {
        if (slice.clusters.labels[p] == c) v.members.push_back(slice.points[p]);
      }
      v.fbar = midpoint_value(lens, v.members);
      slice.vertex_of_cluster[static_cast<std::size_t>(c)] =
          static_cast<int>(graph.vertices.size());
      graph.vertices.push_back(std::move(v));
    }
  }

  // One edge per connected piece of each overlap, weighted by its points.
  double link = options.clusterer.link_radius();
  double link2 = link * link;
  for (std::size_t i = 0; i + 1 < n_slices; ++i) {
    const Slice& a = slices[i];
    const Slice& b = slices[i + 1];
    if (a.points.empty() || b.points.empty()) continue;

    struct Shared {
      int point;
      int pos_a;
      int pos_b;
    };
    std::vector<Shared> shared;
    std::size_t pa = 0, pb = 0;
    while (pa < a.points.size() && pb < b.points.size()) {
      if (a.points[pa] < b.points[pb]) {
        ++pa;
      } else if (b.points[pb] < a.points[pa]) {
        ++pb;
      } else {
        shared.push_back({a.points[pa], static_cast<int>(pa), static_cast<int>(pb)});
        ++pa;
        ++pb;
      }
    }

    std::map<std::pair<int, int>, std::vector<int>> groups;  // (cluster a, cluster b)
    for (std::size_t s = 0; s < shared.size(); ++s) {
      int ca = a.clusters.labels[static_cast<std::size_t>(shared[s].pos_a)];
      int cb = b.clusters.labels[static_cast<std::size_t>(shared[s].pos_b)];
      if (ca == ClusterAssignment::kNoise || cb == ClusterAssignment::kNoise) continue;
      groups[{ca, cb}].push_back(static_cast<int>(s));
    }

    for (const auto& [key, group] : groups) {
      // Split the shared points into connected pieces; each piece is one
      // parallel edge of the multinerve.
      UnionFind uf(group.size());
      for (std::size_t x = 0; x < group.size(); ++x) {
        for (std::size_t y = x + 1; y < group.size(); ++y) {
          int px = shared[static_cast<std::size_t>(group[x])].point;
          int py = shared[static_cast<std::size_t>(group[y])].point;
          if (squared_distance(cloud.point(px), cloud.point(py)) <= link2) {
            uf.merge(static_cast<int>(x), static_cast<int>(y));
          }
        }
      }
      std::map<int, double> piece_weight;  // union-find root -> weight
      for (std::size_t x = 0; x < group.size(); ++x) {
        const Shared& s = shared[static_cast<std::size_t>(group[x])];
        double w = 1.0;
        if (options.weight_mode == WeightMode::kernel) {
          w = std::min(a.weights[static_cast<std::size_t>(s.pos_a)],
                       b.weights[static_cast<std::size_t>(s.pos_b)]);
        }
        piece_weight[uf.find(static_cast<int>(x))] += w;
      }
      for (const auto& [root, weight] : piece_weight) {
        MapperEdge edge;
        edge.a = a.vertex_of_cluster[static_cast<std::size_t>(key.first)];
        edge.b = b.vertex_of_cluster[static_cast<std::size_t>(key.second)];
        edge.weight = weight;
        edge.multiplicity = 1;
        graph.edges.push_back(edge);
      }
    }
  }

  if (sets_out != nullptr) *sets_out = std::move(sets);
  if (multipliers_out != nullptr) *multipliers_out = std::move(multipliers);
  return graph;
}

MapperGraph collapse_multigraph(const MapperGraph& graph) {
  MapperGraph simple;
  simple.vertices = graph.vertices;
  simple.is_multigraph = false;
  std::map<std::pair<int, int>, MapperEdge> merged;
  for (const MapperEdge& e : graph.edges) {
    auto key = std::make_pair(e.a, e.b);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, e);
    } else {
      it->second.weight += e.weight;
      it->second.multiplicity += e.multiplicity;
    }
  }
  simple.edges.reserve(merged.size());
  for (const auto& [key, e] : merged) simple.edges.push_back(e);
  return simple;
}

std::vector<std::pair<int, int>> find_intersection_crossing_edges(const PointCloud& cloud,
                                                                  const LensMap& lens,
                                                                  double delta,
                                                                  const GomicCover& cover) {
  require(delta > 0.0, errc::invalid_parameter, "delta must be positive");
  require(lens.size() == cloud.size(), errc::invalid_parameter,
          "lens must match the point cloud");

  std::vector<std::pair<double, double>> overlaps;
  for (std::size_t i = 0; i + 1 < cover.size(); ++i) {
    double lo = cover[i + 1].lo;
    double hi = std::min(cover[i].hi, cover[i + 1].hi);
    if (lo < hi) overlaps.emplace_back(lo, hi);
  }

  KdTree tree(cloud);
  std::vector<std::vector<std::pair<int, int>>> found(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) {
    for (int j : tree.within(cloud.point(i), delta, static_cast<int>(i))) {
      if (j < static_cast<int>(i)) continue;  // each pair once
      double lo = std::min(lens[i], lens[static_cast<std::size_t>(j)]);
      double hi = std::max(lens[i], lens[static_cast<std::size_t>(j)]);
      for (const auto& [olo, ohi] : overlaps) {
        if (lo <= olo && ohi <= hi) {
          found[i].emplace_back(static_cast<int>(i), j);
          break;
        }
      }
    }
  });

  std::vector<std::pair<int, int>> result;
  for (const auto& list : found) result.insert(result.end(), list.begin(), list.end());
  return result;
}

std::size_t connected_components(const MapperGraph& graph) {
  if (graph.vertices.empty()) return 0;
  UnionFind uf(graph.vertices.size());
  for (const MapperEdge& e : graph.edges) uf.merge(e.a, e.b);
  return uf.count();
}

std::pair<std::size_t, std::size_t> betti_numbers(const MapperGraph& graph) {
  std::size_t components = connected_components(graph);
  std::size_t cycles =
      graph.edges.size() + components - graph.vertices.size();
  return {components, cycles};
}

}  // namespace dbm
