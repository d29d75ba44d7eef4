#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "common.hpp"

namespace dbm {

// Finite set of d-dimensional points, stored row-major.
class PointCloud {
public:
  PointCloud(std::vector<double> coords, std::size_t dim);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double coord(std::size_t i, std::size_t d) const { return coords_[i * dim_ + d]; }
  const std::vector<double>& raw() const noexcept { return coords_; }

  PointCloud subset(const std::vector<int>& indices) const;

private:
  std::vector<double> coords_;
  std::size_t dim_;
};

// Scalar lens (Morse-type) value per point, with cached range.
class LensMap {
public:
  explicit LensMap(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  std::vector<double> values_;
  double lo_;
  double hi_;
};

// k nearest neighbours per point, each list sorted by ascending distance
// (ties by lower index), never containing the point itself.
struct NeighborGraph {
  int k = 0;
  std::vector<std::vector<int>> neighbors;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

// Exact nearest-neighbour queries over a PointCloud.
class KdTree {
public:
  explicit KdTree(const PointCloud& cloud);

  // k nearest points to `query`, excluding index `exclude` if >= 0.
  // Sorted by (distance, index); requires k <= usable point count.
  std::vector<int> nearest(std::span<const double> query, int k, int exclude = -1) const;

  // Indices within `radius` (inclusive) of `query`, ascending index order.
  std::vector<int> within(std::span<const double> query, double radius, int exclude = -1) const;

  double nearest_distance(std::span<const double> query) const;

private:
  struct Node {
    int left = -1;
    int right = -1;
    int begin = 0;
    int end = 0;
    int split_dim = -1;
    double split_value = 0.0;
  };

  int build(int begin, int end);

  const PointCloud& cloud_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

NeighborGraph knn(const PointCloud& cloud, int k);

// Symmetric Hausdorff distance between two finite clouds; the second cloud is
// typically a dense sample standing in for the underlying space.
double hausdorff_estimate(const PointCloud& sample, const PointCloud& reference);

// max |lens_i - lens_j| over pairs with ||x_i - x_j|| <= delta; 0 if no pair.
double modulus_of_continuity(const PointCloud& cloud, const LensMap& lens, double delta);

}  // namespace dbm
