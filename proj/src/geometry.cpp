#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace dbm {

PointCloud::PointCloud(std::vector<double> coords, std::size_t dim)
    : coords_(std::move(coords)), dim_(dim) {
  require(dim_ >= 1, errc::invalid_parameter, "point dimension must be >= 1");
  require(!coords_.empty() && coords_.size() % dim_ == 0, errc::invalid_parameter,
          "coordinate buffer must hold a positive whole number of points");
  for (double v : coords_)
    require(std::isfinite(v), errc::invalid_parameter, "point coordinates must be finite");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  require(!rows.empty(), errc::invalid_parameter, "point cloud must be non-empty");
  std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& row : rows) {
    require(row.size() == dim, errc::invalid_parameter, "all points must share one dimension");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointCloud(std::move(coords), dim);
}

PointCloud PointCloud::subset(const std::vector<int>& indices) const {
  require(!indices.empty(), errc::invalid_parameter, "subset must be non-empty");
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  for (int i : indices) {
    auto p = point(static_cast<std::size_t>(i));
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(std::move(coords), dim_);
}

LensMap::LensMap(std::vector<double> values) : values_(std::move(values)) {
  require(!values_.empty(), errc::invalid_parameter, "lens must be non-empty");
  for (double v : values_)
    require(std::isfinite(v), errc::invalid_parameter, "lens values must be finite");
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  lo_ = *lo;
  hi_ = *hi;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

namespace {

constexpr int kLeafSize = 16;

}  // namespace

KdTree::KdTree(const PointCloud& cloud) : cloud_(cloud) {
  order_.resize(cloud.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * cloud.size() / kLeafSize + 2);
  root_ = build(0, static_cast<int>(order_.size()));
}

int KdTree::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin <= kLeafSize) {
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Split along the widest dimension at the median.
  int dim = 0;
  double best_spread = -1.0;
  for (std::size_t d = 0; d < cloud_.dim(); ++d) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = begin; i < end; ++i) {
      double v = cloud_.coord(order_[i], d);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      dim = static_cast<int>(d);
    }
  }
  int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     double va = cloud_.coord(a, dim);
                     double vb = cloud_.coord(b, dim);
                     return va != vb ? va < vb : a < b;
                   });
  node.split_dim = dim;
  node.split_value = cloud_.coord(order_[mid], dim);

  int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  int left = build(begin, mid);
  int right = build(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

std::vector<int> KdTree::nearest(std::span<const double> query, int k, int exclude) const {
  int usable = static_cast<int>(cloud_.size()) - (exclude >= 0 ? 1 : 0);
  require(k >= 1 && k <= usable, errc::invalid_parameter,
          "k must satisfy 1 <= k <= number of candidate points");

  using Entry = std::pair<double, int>;  // (squared distance, index)
  std::priority_queue<Entry> heap;       // worst candidate on top

  auto visit = [&](auto&& self, int node_index) -> void {
    const Node& node = nodes_[node_index];
    if (node.split_dim < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        int idx = order_[i];
        if (idx == exclude) continue;
        Entry e{squared_distance(query, cloud_.point(idx)), idx};
        if (static_cast<int>(heap.size()) < k) {
          heap.push(e);
        } else if (e < heap.top()) {
          heap.pop();
          heap.push(e);
        }
      }
      return;
    }
    double diff = query[node.split_dim] - node.split_value;
    int first = diff < 0.0 ? node.left : node.right;
    int second = diff < 0.0 ? node.right : node.left;
    self(self, first);
    // The far side may still hold ties that win on index, hence >= bound.
    if (static_cast<int>(heap.size()) < k || diff * diff <= heap.top().first) {
      self(self, second);
    }
  };
  visit(visit, root_);

  std::vector<Entry> entries;
  entries.reserve(heap.size());
  while (!heap.empty()) {
    entries.push_back(heap.top());
    heap.pop();
  }
  std::sort(entries.begin(), entries.end());
  std::vector<int> result;
  result.reserve(entries.size());
  for (const auto& [d2, idx] : entries) result.push_back(idx);
  return result;
}

std::vector<int> KdTree::within(std::span<const double> query, double radius, int exclude) const {
  require(radius >= 0.0, errc::invalid_parameter, "radius must be non-negative");
  double r2 = radius * radius;
  std::vector<int> result;
  auto visit = [&](auto&& self, int node_index) -> void {
    const Node& node = nodes_[node_index];
    if (node.split_dim < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        int idx = order_[i];
        if (idx == exclude) continue;
        if (squared_distance(query, cloud_.point(idx)) <= r2) result.push_back(idx);
      }
      return;
    }
    double diff = query[node.split_dim] - node.split_value;
    if (diff <= radius) self(self, node.left);
    if (-diff <= radius) self(self, node.right);
  };
  visit(visit, root_);
  std::sort(result.begin(), result.end());
  return result;
}

double KdTree::nearest_distance(std::span<const double> query) const {
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](auto&& self, int node_index) -> void {
    const Node& node = nodes_[node_index];
    if (node.split_dim < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        best = std::min(best, squared_distance(query, cloud_.point(order_[i])));
      }
      return;
    }
    double diff = query[node.split_dim] - node.split_value;
    int first = diff < 0.0 ? node.left : node.right;
    int second = diff < 0.0 ? node.right : node.left;
    self(self, first);
    if (diff * diff < best) self(self, second);
  };
  visit(visit, root_);
  return std::sqrt(best);
}

NeighborGraph knn(const PointCloud& cloud, int k) {
  require(k >= 1 && static_cast<std::size_t>(k) < cloud.size(), errc::invalid_parameter,
          "knn requires 1 <= k < number of points");
  KdTree tree(cloud);
  NeighborGraph graph;
  graph.k = k;
  graph.neighbors.resize(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) {
    graph.neighbors[i] = tree.nearest(cloud.point(i), k, static_cast<int>(i));
  });
  return graph;
}

double hausdorff_estimate(const PointCloud& sample, const PointCloud& reference) {
  require(sample.dim() == reference.dim(), errc::invalid_parameter,
          "clouds must share one dimension");
  KdTree sample_tree(sample);
  KdTree reference_tree(reference);
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    worst = std::max(worst, reference_tree.nearest_distance(sample.point(i)));
  for (std::size_t j = 0; j < reference.size(); ++j)
    worst = std::max(worst, sample_tree.nearest_distance(reference.point(j)));
  return worst;
}

double modulus_of_continuity(const PointCloud& cloud, const LensMap& lens, double delta) {
  require(delta > 0.0, errc::invalid_parameter, "delta must be positive");
  require(lens.size() == cloud.size(), errc::invalid_parameter,
          "lens must match the point cloud");
  KdTree tree(cloud);
  std::vector<double> per_point(cloud.size(), 0.0);
  parallel_for(cloud.size(), [&](std::size_t i) {
    double worst = 0.0;
    for (int j : tree.within(cloud.point(i), delta, static_cast<int>(i))) {
      worst = std::max(worst, std::abs(lens[i] - lens[static_cast<std::size_t>(j)]));
    }
    per_point[i] = worst;
  });
  return *std::max_element(per_point.begin(), per_point.end());
}

}  // namespace dbm
