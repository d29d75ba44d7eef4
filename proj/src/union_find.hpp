#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace dbm {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void merge(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    --count_;
  }

  bool same(int a, int b) { return find(a) == find(b); }
  std::size_t count() const { return count_; }

private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::size_t count_;
};

}  // namespace dbm
