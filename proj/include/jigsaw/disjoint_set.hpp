#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "jigsaw/graph.hpp"

namespace jigsaw {

// Union by size with path halving.
class DisjointSet {
 public:
  DisjointSet() = default;
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  std::size_t element_count() const { return parent_.size(); }
  std::size_t set_count() const { return sets_; }

  VertexId find(VertexId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Without path compression, for const access.
  VertexId find(VertexId x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  // Returns the surviving root.
  VertexId unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return a;
  }

  // Attaches root `absorbed` under root `keep` regardless of size.
  void link(VertexId keep, VertexId absorbed) {
    parent_[absorbed] = keep;
    size_[keep] += size_[absorbed];
    --sets_;
  }

  std::size_t size_of(VertexId x) const { return size_[find(x)]; }

  friend bool operator==(const DisjointSet&, const DisjointSet&) = default;

 private:
  std::vector<VertexId> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_ = 0;
};

}  // namespace jigsaw
