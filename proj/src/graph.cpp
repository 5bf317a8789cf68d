#include "jigsaw/graph.hpp"

#include <algorithm>
#include <string>

#include "jigsaw/error.hpp"

namespace jigsaw {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) continue;
    ++deg[u];
    ++deg[v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.neighbors_.resize(g.offsets_[n]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }

  // Sort and dedup each list, then compact.
  std::size_t write = 0;
  std::size_t begin = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t end = g.offsets_[v + 1];
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(begin);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(end);
    std::sort(first, last);
    last = std::unique(first, last);
    const std::size_t len = static_cast<std::size_t>(last - first);
    std::copy(first, last, g.neighbors_.begin() + static_cast<std::ptrdiff_t>(write));
    g.offsets_[v] = write;
    write += len;
    begin = end;
  }
  g.offsets_[n] = write;
  g.neighbors_.resize(write);
  g.neighbors_.shrink_to_fit();
  return g;
}

bool Graph::are_adjacent(VertexId u, VertexId v) const {
  const std::size_t n = vertex_count();
  if (u >= n || v >= n) {
    throw InputError("vertex id out of range: (" + std::to_string(u) + ", " +
                     std::to_string(v) + ") with n = " + std::to_string(n));
  }
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for_each_edge([&](VertexId u, VertexId v) { out.emplace_back(u, v); });
  return out;
}

std::vector<VertexId> component_labels(const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr VertexId kUnset = ~VertexId{0};
  std::vector<VertexId> label(n, kUnset);
  std::vector<VertexId> stack;
  // Scanning roots in increasing order makes each label the component minimum.
  for (VertexId root = 0; root < n; ++root) {
    if (label[root] != kUnset) continue;
    label[root] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(u)) {
        if (label[w] == kUnset) {
          label[w] = root;
          stack.push_back(w);
        }
      }
    }
  }
  return label;
}

Partition partition_from_labels(std::span<const VertexId> labels) {
  const std::size_t n = labels.size();
  std::vector<std::size_t> slot(n, n);
  Partition out;
  // First occurrence of a label happens at its smallest member, so blocks come
  // out ordered by minimum member with ascending members.
  for (VertexId v = 0; v < n; ++v) {
    const VertexId l = labels[v];
    if (slot[l] == n) {
      slot[l] = out.size();
      out.emplace_back();
    }
    out[slot[l]].push_back(v);
  }
  return out;
}

Partition connected_components(const Graph& g) {
  const auto labels = component_labels(g);
  return partition_from_labels(labels);
}

bool is_connected(const Graph& g) {
  const auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](VertexId l) { return l == 0; });
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  const std::size_t n = g.vertex_count();
  constexpr VertexId kAbsent = ~VertexId{0};
  std::vector<VertexId> local(n, kAbsent);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const VertexId v = vertices[i];
    if (v >= n) throw InputError("subset vertex " + std::to_string(v) + " out of range");
    if (local[v] != kAbsent) throw InputError("subset vertex " + std::to_string(v) + " repeated");
    local[v] = static_cast<VertexId>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (VertexId w : g.neighbors(vertices[i])) {
      if (local[w] != kAbsent && i < local[w]) {
        edges.emplace_back(static_cast<VertexId>(i), local[w]);
      }
    }
  }
  return Graph::from_edges(vertices.size(), edges);
}

}  // namespace jigsaw
