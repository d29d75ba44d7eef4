#include "persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "union_find.hpp"

namespace dbm {

const char* point_kind_name(PointKind kind) {
  switch (kind) {
    case PointKind::Ord0: return "Ord0";
    case PointKind::Ext0: return "Ext0";
    case PointKind::Ext1: return "Ext1";
    case PointKind::Rel1: return "Rel1";
  }
  return "?";
}

PointKind point_kind_from_name(const std::string& name) {
  if (name == "Ord0") return PointKind::Ord0;
  if (name == "Ext0") return PointKind::Ext0;
  if (name == "Ext1") return PointKind::Ext1;
  if (name == "Rel1") return PointKind::Rel1;
  fail(errc::invalid_parameter, "unknown persistence point kind '" + name + "'");
}

std::size_t PersistenceDiagram::count(PointKind kind) const {
  std::size_t c = 0;
  for (const auto& p : points)
    if (p.kind == kind) ++c;
  return c;
}

namespace {

// Cells of the extended filtration. The cone apex comes first so that merges
// against the coned part pair with real components; the ascending pass adds
// vertices and edges of the graph in lower-star order; the descending pass
// adds the cone edge of each vertex and the coned triangle of each edge in
// upper-star order. Ties are broken by vertex rank (simulated simplicity).
enum class CellType { apex, vertex, edge, cone_edge, cone_triangle };

struct Cell {
  CellType type;
  int id;  // vertex index or edge index
};

PersistenceDiagram reduce_extended(const FilteredGraph& graph) {
  std::size_t n = graph.vertex_count;
  std::size_t m = graph.edges.size();
  require(graph.values.size() == n, errc::invalid_parameter,
          "vertex values must match the vertex count");
  for (const auto& [a, b] : graph.edges) {
    require(a >= 0 && b >= 0 && a < static_cast<int>(n) && b < static_cast<int>(n) && a != b,
            errc::invalid_parameter, "edge endpoints must be distinct valid vertices");
  }

  // Total order on vertices: by (value, index).
  std::vector<int> rank(n);
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return graph.values[a] != graph.values[b] ? graph.values[a] < graph.values[b] : a < b;
    });
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<int>(i);
  }
  auto upper = [&](int e) {
    auto [a, b] = graph.edges[static_cast<std::size_t>(e)];
    return rank[a] > rank[b] ? a : b;
  };
  auto lower = [&](int e) {
    auto [a, b] = graph.edges[static_cast<std::size_t>(e)];
    return rank[a] > rank[b] ? b : a;
  };

  std::vector<Cell> cells;
  cells.reserve(2 * (n + m) + 1);
  cells.push_back({CellType::apex, 0});

  {
    std::vector<int> vs(n), es(m);
    std::iota(vs.begin(), vs.end(), 0);
    std::iota(es.begin(), es.end(), 0);
    std::sort(vs.begin(), vs.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    std::sort(es.begin(), es.end(), [&](int a, int b) {
      int ra = rank[upper(a)], rb = rank[upper(b)];
      return ra != rb ? ra < rb : a < b;
    });
    // Ascending pass: each vertex before the edges it caps.
    std::size_t ei = 0;
    for (std::size_t vi = 0; vi < n; ++vi) {
      cells.push_back({CellType::vertex, vs[vi]});
      while (ei < m && rank[upper(es[ei])] <= rank[vs[vi]]) {
        cells.push_back({CellType::edge, es[ei]});
        ++ei;
      }
    }
    // Descending pass over the cone: cone edges in decreasing vertex rank,
    // each followed by the coned triangles it completes.
    std::sort(vs.begin(), vs.end(), [&](int a, int b) { return rank[a] > rank[b]; });
    std::sort(es.begin(), es.end(), [&](int a, int b) {
      int ra = rank[lower(a)], rb = rank[lower(b)];
      return ra != rb ? ra > rb : a < b;
    });
    ei = 0;
    for (std::size_t vi = 0; vi < n; ++vi) {
      cells.push_back({CellType::cone_edge, vs[vi]});
      while (ei < m && rank[lower(es[ei])] >= rank[vs[vi]]) {
        cells.push_back({CellType::cone_triangle, es[ei]});
        ++ei;
      }
    }
  }

  std::size_t total = cells.size();
  std::vector<int> vertex_pos(n, -1), edge_pos(m, -1), cone_edge_pos(n, -1);
  for (std::size_t i = 0; i < total; ++i) {
    switch (cells[i].type) {
      case CellType::vertex: vertex_pos[cells[i].id] = static_cast<int>(i); break;
      case CellType::edge: edge_pos[cells[i].id] = static_cast<int>(i); break;
      case CellType::cone_edge: cone_edge_pos[cells[i].id] = static_cast<int>(i); break;
      default: break;
    }
  }

  // Boundary columns over Z/2, rows ascending; low = back().
  std::vector<std::vector<int>> columns(total);
  for (std::size_t i = 0; i < total; ++i) {
    const Cell& cell = cells[i];
    std::vector<int>& col = columns[i];
    switch (cell.type) {
      case CellType::apex:
      case CellType::vertex:
        break;
      case CellType::edge: {
        auto [a, b] = graph.edges[static_cast<std::size_t>(cell.id)];
        col = {vertex_pos[a], vertex_pos[b]};
        break;
      }
      case CellType::cone_edge:
        col = {0, vertex_pos[cell.id]};
        break;
      case CellType::cone_triangle: {
        auto [a, b] = graph.edges[static_cast<std::size_t>(cell.id)];
        col = {edge_pos[cell.id], cone_edge_pos[a], cone_edge_pos[b]};
        break;
      }
    }
    std::sort(col.begin(), col.end());
  }

  std::vector<int> owner_of_low(total, -1);
  auto add_column = [](std::vector<int>& into, const std::vector<int>& other) {
    std::vector<int> out;
    out.reserve(into.size() + other.size());
    std::set_symmetric_difference(into.begin(), into.end(), other.begin(), other.end(),
                                  std::back_inserter(out));
    into = std::move(out);
  };

  std::vector<std::pair<int, int>> pairs;  // (birth cell, death cell)
  for (std::size_t j = 0; j < total; ++j) {
    std::vector<int>& col = columns[j];
    while (!col.empty()) {
      int low = col.back();
      int other = owner_of_low[low];
      if (other < 0) break;
      add_column(col, columns[static_cast<std::size_t>(other)]);
    }
    if (!col.empty()) {
      owner_of_low[col.back()] = static_cast<int>(j);
      pairs.emplace_back(col.back(), static_cast<int>(j));
    }
  }

  PersistenceDiagram diagram;
  for (const auto& [bi, di] : pairs) {
    const Cell& birth = cells[static_cast<std::size_t>(bi)];
    const Cell& death = cells[static_cast<std::size_t>(di)];
    if (birth.type == CellType::apex) continue;  // cone bookkeeping

    PersistencePoint p;
    if (birth.type == CellType::vertex && death.type == CellType::edge) {
      p.kind = PointKind::Ord0;
      p.birth = graph.values[birth.id];
      p.death = graph.values[upper(death.id)];
    } else if (birth.type == CellType::vertex && death.type == CellType::cone_edge) {
      p.kind = PointKind::Ext0;
      p.birth = graph.values[birth.id];
      p.death = graph.values[death.id];
    } else if (birth.type == CellType::edge && death.type == CellType::cone_triangle) {
      p.kind = PointKind::Ext1;
      p.birth = graph.values[upper(birth.id)];
      p.death = graph.values[lower(death.id)];
    } else if (birth.type == CellType::cone_edge && death.type == CellType::cone_triangle) {
      p.kind = PointKind::Rel1;
      p.birth = graph.values[birth.id];
      p.death = graph.values[lower(death.id)];
    } else {
      fail(errc::internal, "unexpected pair type in extended persistence reduction");
    }
    bool essential = p.kind == PointKind::Ext0 || p.kind == PointKind::Ext1;
    if (essential || p.birth != p.death) diagram.points.push_back(p);
  }
  return diagram;
}

}  // namespace

PersistenceDiagram extended_persistence(const FilteredGraph& graph) {
  require(graph.vertex_count > 0, errc::invalid_parameter, "graph has no vertices");
  return reduce_extended(graph);
}

PersistenceDiagram extended_persistence(const MapperGraph& graph) {
  FilteredGraph fg;
  fg.vertex_count = graph.vertices.size();
  fg.values.reserve(graph.vertices.size());
  for (const auto& v : graph.vertices) fg.values.push_back(v.fbar);
  fg.edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) fg.edges.emplace_back(e.a, e.b);
  return extended_persistence(fg);
}

namespace {

double diagonal_cost(const PersistencePoint& p) { return p.persistence() / 2.0; }

double linf(const PersistencePoint& a, const PersistencePoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Perfect-matching feasibility at threshold t in the doubled bipartite graph:
// left = points of A plus a diagonal proxy per point of B, right = points of
// B plus a diagonal proxy per point of A. A point may pair with an opposite
// point within t, or with its own diagonal when the projection fits; proxies
// pair with each other freely. Bottleneck <= t iff a perfect matching exists.
bool matchable_at(const std::vector<PersistencePoint>& a,
                  const std::vector<PersistencePoint>& b, double t) {
  std::size_t n = a.size(), m = b.size();
  std::size_t total = n + m;
  std::vector<std::vector<int>> edges(total);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (linf(a[i], b[j]) <= t) edges[i].push_back(static_cast<int>(j));
    }
    if (diagonal_cost(a[i]) <= t) edges[i].push_back(static_cast<int>(m + i));
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (diagonal_cost(b[j]) <= t) edges[n + j].push_back(static_cast<int>(j));
    for (std::size_t i = 0; i < n; ++i) {
      edges[n + j].push_back(static_cast<int>(m + i));
    }
  }

  std::vector<int> owner(total, -1);
  std::vector<char> seen(total, 0);
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : edges[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      if (owner[static_cast<std::size_t>(v)] < 0 ||
          self(self, owner[static_cast<std::size_t>(v)])) {
        owner[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < total; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(augment, static_cast<int>(u))) return false;
  }
  return true;
}

}  // namespace

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  double result = 0.0;
  for (PointKind kind :
       {PointKind::Ord0, PointKind::Ext0, PointKind::Ext1, PointKind::Rel1}) {
    std::vector<PersistencePoint> a, b;
    for (const auto& p : d1.points)
      if (p.kind == kind) a.push_back(p);
    for (const auto& p : d2.points)
      if (p.kind == kind) b.push_back(p);
    if (a.empty() && b.empty()) continue;

    std::vector<double> candidates{0.0};
    for (const auto& p : a) candidates.push_back(diagonal_cost(p));
    for (const auto& q : b) candidates.push_back(diagonal_cost(q));
    for (const auto& p : a)
      for (const auto& q : b) candidates.push_back(linf(p, q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (matchable_at(a, b, candidates[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    result = std::max(result, candidates[lo]);
  }
  return result;
}

double diagram_gap(const PersistenceDiagram& reference, const PersistenceDiagram& candidate,
                   double tol) {
  double gap = 0.0;
  for (PointKind kind :
       {PointKind::Ord0, PointKind::Ext0, PointKind::Ext1, PointKind::Rel1}) {
    std::vector<PersistencePoint> ref, cand;
    for (const auto& p : reference.points)
      if (p.kind == kind) ref.push_back(p);
    for (const auto& p : candidate.points)
      if (p.kind == kind) cand.push_back(p);
    if (ref.empty()) continue;

    // Match high-persistence reference points first so the reported gap is
    // the smallest achievable over maximum matchings.
    std::vector<int> order(ref.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return ref[static_cast<std::size_t>(x)].persistence() >
             ref[static_cast<std::size_t>(y)].persistence();
    });

    std::vector<int> owner(cand.size(), -1);
    std::vector<char> seen(cand.size(), 0);
    auto admissible = [&](int r, int c) {
      return std::abs(ref[static_cast<std::size_t>(r)].birth -
                      cand[static_cast<std::size_t>(c)].birth) <= tol &&
             std::abs(ref[static_cast<std::size_t>(r)].death -
                      cand[static_cast<std::size_t>(c)].death) <= tol;
    };
    auto augment = [&](auto&& self, int r) -> bool {
      for (std::size_t c = 0; c < cand.size(); ++c) {
        if (seen[c] || !admissible(r, static_cast<int>(c))) continue;
        seen[c] = 1;
        if (owner[c] < 0 || self(self, owner[c])) {
          owner[c] = r;
          return true;
        }
      }
      return false;
    };
    for (int r : order) {
      std::fill(seen.begin(), seen.end(), 0);
      if (!augment(augment, r)) {
        gap = std::max(gap, ref[static_cast<std::size_t>(r)].persistence());
      }
    }
  }
  return gap;
}

ReebOracle reeb_oracle(const PointCloud& cloud, const LensMap& lens, double delta) {
  require(delta > 0.0, errc::invalid_parameter, "delta must be positive");
  require(lens.size() == cloud.size(), errc::invalid_parameter,
          "lens must match the point cloud");
  require(lens.lo() < lens.hi(), errc::invalid_parameter,
          "lens needs at least two distinct values");

  std::size_t n = cloud.size();
  KdTree tree(cloud);
  std::vector<std::vector<int>> nbrs(n);
  parallel_for(n, [&](std::size_t i) {
    nbrs[i] = tree.within(cloud.point(i), delta, static_cast<int>(i));
  });

  // A vertex is critical unless both its upper and lower links are single
  // non-empty components; links are taken in the delta-Rips 2-skeleton, with
  // lens ties broken by index.
  auto above = [&](int a, int b) {
    return lens[static_cast<std::size_t>(a)] != lens[static_cast<std::size_t>(b)]
               ? lens[static_cast<std::size_t>(a)] > lens[static_cast<std::size_t>(b)]
               : a > b;
  };
  double d2 = delta * delta;
  std::vector<char> critical(n, 0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<int> up, down;
    for (int j : nbrs[i]) {
      (above(j, static_cast<int>(i)) ? up : down).push_back(j);
    }
    auto component_count = [&](const std::vector<int>& link) {
      if (link.empty()) return std::size_t{0};
      UnionFind uf(link.size());
      for (std::size_t x = 0; x < link.size(); ++x) {
        for (std::size_t y = x + 1; y < link.size(); ++y) {
          if (squared_distance(cloud.point(link[x]), cloud.point(link[y])) <= d2) {
            uf.merge(static_cast<int>(x), static_cast<int>(y));
          }
        }
      }
      return uf.count();
    };
    critical[i] = component_count(up) != 1 || component_count(down) != 1;
  });

  std::vector<double> critical_values;
  for (std::size_t i = 0; i < n; ++i) {
    if (critical[i]) critical_values.push_back(lens[i]);
  }
  std::sort(critical_values.begin(), critical_values.end());
  critical_values.erase(std::unique(critical_values.begin(), critical_values.end()),
                        critical_values.end());
  require(critical_values.size() >= 2, errc::internal,
          "expected at least two critical values");

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < critical_values.size(); ++i) {
    gap = std::min(gap, critical_values[i] - critical_values[i - 1]);
  }

  double range = lens.hi() - lens.lo();
  double g = 0.5;
  double target = std::min(0.9 * gap, range / 16.0);
  int n_intervals = static_cast<int>(std::ceil(range * (1.0 + g / 2.0) / target));
  constexpr int kMaxIntervals = 50000;
  require(n_intervals <= kMaxIntervals, errc::degenerate_cover,
          "critical values too close together; perturb the lens values");

  ReebOracle oracle;
  oracle.cover = morse_spaced_cover(lens.lo(), lens.hi(), n_intervals, g);
  oracle.critical_gap = gap;
  oracle.critical_values = std::move(critical_values);

  MapperOptions options;
  options.kernel = {KernelShape::square, 0.1};
  options.scaler = {1.0, 0.0};  // standard Mapper
  options.clusterer.kind = ClustererKind::single_linkage;
  options.clusterer.delta = delta;
  options.weight_mode = WeightMode::count;

  std::vector<KerneledSet> sets;
  MapperGraph multigraph =
      build_mapper(cloud, lens, oracle.cover, options, nullptr, &sets);
  oracle.graph = collapse_multigraph(multigraph);

  double resolution = 0.0;
  for (const KerneledSet& set : sets) {
    if (set.members.empty()) continue;
    double lo = lens[static_cast<std::size_t>(set.members.front().index)];
    double hi = lo;
    for (const auto& m : set.members) {
      double t = lens[static_cast<std::size_t>(m.index)];
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    resolution = std::max(resolution, hi - lo);
  }
  oracle.resolution = resolution;
  return oracle;
}

}  // namespace dbm
