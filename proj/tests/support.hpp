#pragma once

// Test-only helpers: a naive reference engine written straight from the merge
// rule, plus small graph enumerators.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <string>
#include <vector>

#include "jigsaw/engine.hpp"
#include "jigsaw/graph.hpp"
#include "jigsaw/theory.hpp"

namespace jigsaw::testing {

struct ReferenceOutcome {
  bool solved = false;
  std::size_t rounds = 0;
  std::vector<VertexId> labels;  // smallest member of each vertex's cluster
  std::vector<std::size_t> cluster_counts;
};

inline std::vector<VertexId> relabel_by_min(const std::vector<std::size_t>& comp) {
  const std::size_t n = comp.size();
  std::vector<VertexId> smallest(n, static_cast<VertexId>(n));
  for (std::size_t v = 0; v < n; ++v) smallest[comp[v]] = std::min<VertexId>(smallest[comp[v]], v);
  std::vector<VertexId> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = smallest[comp[v]];
  return out;
}

// Iterates the rule from singletons. Each round builds the cluster graph
// (clusters joined when some pair of their members witnesses the rule) by
// checking every vertex pair, then takes its connected components by repeated
// label propagation.
inline ReferenceOutcome reference_run(const Graph& people, const Graph& puzzle,
                                      MergeRule rule = MergeRule::kStandard) {
  const std::size_t n = puzzle.vertex_count();
  std::vector<std::size_t> cluster(n);
  std::iota(cluster.begin(), cluster.end(), std::size_t{0});
  ReferenceOutcome out;
  std::size_t i = 0;
  while (true) {
    const std::size_t k = n;
    std::vector<std::vector<bool>> people_adj(k, std::vector<bool>(k, false));
    std::vector<std::vector<bool>> puzzle_adj(k, std::vector<bool>(k, false));
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        if (cluster[u] == cluster[v]) continue;
        if (people.are_adjacent(u, v)) people_adj[cluster[u]][cluster[v]] = true;
        if (puzzle.are_adjacent(u, v)) puzzle_adj[cluster[u]][cluster[v]] = true;
      }
    }
    std::vector<std::vector<bool>> merge(k, std::vector<bool>(k, false));
    if (rule == MergeRule::kStandard) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) merge[a][b] = people_adj[a][b] && puzzle_adj[a][b];
    } else {
      // Some u in U with both a people and a puzzle neighbour in W.
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId w1 = 0; w1 < n; ++w1) {
          if (cluster[w1] == cluster[u] || !puzzle.are_adjacent(u, w1)) continue;
          for (VertexId w2 = 0; w2 < n; ++w2) {
            if (cluster[w2] != cluster[w1] || !people.are_adjacent(u, w2)) continue;
            merge[cluster[u]][cluster[w1]] = merge[cluster[w1]][cluster[u]] = true;
          }
        }
      }
    }
    bool any = false;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) any = any || merge[a][b];
    if (!any) break;
    ++i;
    std::vector<std::size_t> next = cluster;
    for (bool changed = true; changed;) {
      changed = false;
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) {
          if (merge[cluster[u]][cluster[v]] && next[v] < next[u]) {
            next[u] = next[v];
            changed = true;
          }
          if (cluster[u] == cluster[v] && next[v] < next[u]) {
            next[u] = next[v];
            changed = true;
          }
        }
      }
    }
    cluster = next;
    std::vector<std::size_t> distinct = cluster;
    std::sort(distinct.begin(), distinct.end());
    out.cluster_counts.push_back(
        static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin()));
  }
  out.rounds = i;
  out.labels = relabel_by_min(cluster);
  out.solved = std::all_of(out.labels.begin(), out.labels.end(), [](VertexId l) { return l == 0; });
  return out;
}

inline std::vector<Edge> all_pairs(std::size_t n) {
  std::vector<Edge> pairs;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

// The people graph whose edges are the pairs selected by bits of `mask`.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  const auto pairs = all_pairs(n);
  std::vector<Edge> chosen;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1U) chosen.push_back(pairs[i]);
  return Graph::from_edges(n, chosen);
}

// Labelled tree on n >= 2 vertices from a Prufer sequence of length n - 2.
inline Graph tree_from_prufer(std::size_t n, const std::vector<VertexId>& seq) {
  std::vector<std::size_t> degree(n, 1);
  for (VertexId v : seq) ++degree[v];
  std::vector<Edge> edges;
  for (VertexId v : seq) {
    VertexId leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, v);
    --degree[leaf];
    --degree[v];
  }
  std::vector<VertexId> rest;
  for (VertexId u = 0; u < n; ++u)
    if (degree[u] == 1) rest.push_back(u);
  edges.emplace_back(rest[0], rest[1]);
  return Graph::from_edges(n, edges);
}

// Calls f(tree) for all n^(n-2) labelled trees on n >= 2 vertices.
template <typename F>
void for_each_labelled_tree(std::size_t n, F&& f) {
  std::vector<VertexId> seq(n - 2, 0);
  while (true) {
    f(tree_from_prufer(n, seq));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) return;
  }
}

// Empty when `bp` is a valid block cover of the connected graph g; otherwise
// a description of the first violated property.
inline std::string block_partition_violation(const Graph& g, const BlockPartition& bp) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = bp.m;
  const auto& blocks = bp.blocks;
  if (blocks.empty()) return "no blocks";
  std::vector<std::size_t> covered(n, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const bool last = i + 1 == blocks.size();
    if (b.empty()) return "empty block";
    if (!last && (b.size() < m || b.size() > 2 * m)) return "block size outside [m, 2m]";
    if (last && b.size() > 2 * m) return "last block larger than 2m";
    if (!is_connected(induced_subgraph(g, b))) return "block induces a disconnected subgraph";
    for (VertexId v : b) ++covered[v];
  }
  if (std::count(covered.begin(), covered.end(), 0) > 0) return "vertex not covered";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      std::vector<VertexId> common;
      std::set_intersection(blocks[i].begin(), blocks[i].end(), blocks[j].begin(), blocks[j].end(),
                            std::back_inserter(common));
      if (common.size() > 1) return "two blocks share more than one vertex";
    }
  }
  if (2 * m * blocks.size() < n) return "fewer than n/(2m) blocks";
  return {};
}

}  // namespace jigsaw::testing
