#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace jigsaw {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Immutable undirected simple graph on vertices 0..n-1 stored as compressed
// sorted adjacency. Safe for concurrent reads.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Builds the simple graph on n vertices spanned by `edges`. Duplicates and
  // self-loops are dropped; an endpoint >= n throws InputError naming the pair.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Sorted ascending, no duplicates.
  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }

  // Throws InputError for ids outside [0, n).
  bool are_adjacent(VertexId u, VertexId v) const;

  // Each edge once as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  template <typename F>
  void for_each_edge(F&& f) const {
    for (VertexId u = 0; u < vertex_count(); ++u) {
      for (VertexId v : neighbors(u)) {
        if (u < v) f(u, v);
      }
    }
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
};

inline Graph graph_from_edges(std::size_t n, std::span<const Edge> edges) {
  return Graph::from_edges(n, edges);
}

// Vertex partition: components sorted by minimum member, members ascending.
using Partition = std::vector<std::vector<VertexId>>;

Partition connected_components(const Graph& g);

// Per-vertex component label equal to the smallest vertex of its component.
std::vector<VertexId> component_labels(const Graph& g);

// n = 0 and n = 1 count as connected.
bool is_connected(const Graph& g);

std::size_t max_degree(const Graph& g);

// Subgraph induced on `vertices` (need not be sorted, must be distinct and in
// range), relabelled so that vertices[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

// Groups vertices by label into canonical Partition order.
Partition partition_from_labels(std::span<const VertexId> labels);

}  // namespace jigsaw
