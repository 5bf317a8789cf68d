#include "jigsaw/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jigsaw/edge_list.hpp"
#include "jigsaw/error.hpp"

namespace jigsaw {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("edge probability must lie in [0, 1], got " + std::to_string(p));
  }
}

// Visits the pairs (v, w), w < v, of an n-vertex graph that survive
// independent p-thinning, in increasing (v, w) order (Batagelj & Brandes).
template <typename F>
void for_each_sampled_pair(std::size_t n, double p, Rng& rng, F&& emit) {
  if (n < 2 || p <= 0.0) return;
  if (p >= 1.0) {
    for (VertexId v = 1; v < n; ++v) {
      for (VertexId w = 0; w < v; ++w) emit(v, w);
    }
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double skip = std::floor(std::log(rng.uniform_open0()) / log_q);
    // Skips beyond the remaining pair count end the walk.
    if (skip >= static_cast<double>(n) * static_cast<double>(n)) break;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= static_cast<std::int64_t>(v) && v < n) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) emit(static_cast<VertexId>(v), static_cast<VertexId>(w));
  }
}

}  // namespace

Graph cycle_puzzle(std::size_t n) {
  if (n < 3) throw InputError("cycle puzzle needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  }
  return Graph::from_edges(n, edges);
}

Graph star_puzzle(std::size_t n) {
  if (n < 2) throw InputError("star puzzle needs n >= 2, got " + std::to_string(n));
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  const auto center = static_cast<VertexId>(n - 1);
  for (VertexId i = 0; i < center; ++i) edges.emplace_back(i, center);
  return Graph::from_edges(n, edges);
}

Graph torus_puzzle(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) {
    throw InputError("torus puzzle needs rows, cols >= 3, got " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  std::vector<Edge> edges;
  edges.reserve(2 * rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      edges.emplace_back(id(r, c), id(r, (c + 1) % cols));
      edges.emplace_back(id(r, c), id((r + 1) % rows, c));
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

Graph path_puzzle(std::size_t n) {
  if (n < 1) throw InputError("path puzzle needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  }
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n - (n > 0)) / 2);
  for (VertexId v = 1; v < n; ++v) {
    for (VertexId w = 0; w < v; ++w) edges.emplace_back(w, v);
  }
  return Graph::from_edges(n, edges);
}

Graph random_tree_puzzle(std::size_t n, std::size_t max_deg, Seed seed) {
  if (n < 1) throw InputError("random tree needs n >= 1");
  if (max_deg < 2) throw InputError("random tree needs max_deg >= 2");
  Rng rng(seed);
  std::vector<std::size_t> degree(n, 0);
  std::vector<VertexId> open{0};  // vertices with spare capacity
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (VertexId v = 1; v < n; ++v) {
    const auto slot = static_cast<std::size_t>(rng.below(open.size()));
    const VertexId parent = open[slot];
    edges.emplace_back(parent, v);
    if (++degree[parent] == max_deg) {
      open[slot] = open.back();
      open.pop_back();
    }
    degree[v] = 1;
    open.push_back(v);
  }
  return Graph::from_edges(n, edges);
}

Graph erdos_renyi(std::size_t n, double p, Seed seed) {
  check_probability(p);
  Rng rng(seed);
  std::vector<Edge> edges;
  const double expected = p * static_cast<double>(n) * static_cast<double>(n - (n > 0)) / 2.0;
  edges.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
  for_each_sampled_pair(n, p, rng, [&](VertexId v, VertexId w) { edges.emplace_back(w, v); });
  return Graph::from_edges(n, edges);
}

std::vector<WeightedEdge> erdos_renyi_weights(std::size_t n, double p_max, Seed seed) {
  check_probability(p_max);
  Rng rng(seed);
  std::vector<WeightedEdge> out;
  const double expected = p_max * static_cast<double>(n) * static_cast<double>(n - (n > 0)) / 2.0;
  out.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
  // Conditioned on falling below p_max, a pair's uniform is uniform on [0, p_max).
  for_each_sampled_pair(n, p_max, rng, [&](VertexId v, VertexId w) {
    out.push_back({p_max * rng.uniform(), Edge{w, v}});
  });
  auto before = [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.edge < b.edge;
  };
  // Weights are uniform on [0, p_max): one bucket per item, then sort within
  // buckets. Same order as a full sort, in expected linear time.
  const std::size_t m = out.size();
  if (m < 64) {
    std::sort(out.begin(), out.end(), before);
    return out;
  }
  const double scale = static_cast<double>(m) / p_max;
  auto bucket = [&](double w) { return std::min(m - 1, static_cast<std::size_t>(w * scale)); };
  std::vector<std::size_t> start(m + 1, 0);
  for (const auto& e : out) ++start[bucket(e.weight) + 1];
  for (std::size_t b = 0; b < m; ++b) start[b + 1] += start[b];
  std::vector<WeightedEdge> sorted(m);
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& e : out) sorted[fill[bucket(e.weight)]++] = e;
  for (std::size_t b = 0; b < m; ++b) {
    if (start[b + 1] - start[b] > 1) {
      std::sort(sorted.begin() + start[b], sorted.begin() + start[b + 1], before);
    }
  }
  return sorted;
}

std::vector<std::size_t> power_law_degrees(std::size_t n, double gamma, Rng& rng) {
  if (!(gamma > 2.0)) throw InputError("power-law exponent must exceed 2, got " + std::to_string(gamma));
  if (n < 2) throw InputError("power-law people graph needs n >= 2");
  const std::size_t k_max = n - 1;
  std::vector<double> cdf(k_max);
  double total = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    total += std::pow(static_cast<double>(k), -gamma);
    cdf[k - 1] = total;
  }
  std::vector<std::size_t> degrees(n);
  std::size_t sum = 0;
  for (auto& d : degrees) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    d = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), k_max - 1) + 1;
    sum += d;
  }
  if (sum % 2 == 1) {
    auto& d = degrees[rng.below(n)];
    // Capped at n-1; stepping down instead fixes parity just as well.
    if (d < k_max) {
      ++d;
    } else {
      --d;
    }
  }
  return degrees;
}

Graph power_law_people(std::size_t n, double gamma, Seed seed) {
  Rng rng(seed);
  const auto degrees = power_law_degrees(n, gamma, rng);
  std::vector<VertexId> stubs;
  for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), degrees[v], v);
  for (std::size_t i = stubs.size(); i > 1; --i) {
    std::swap(stubs[i - 1], stubs[rng.below(i)]);
  }
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
  return Graph::from_edges(n, edges);
}

void require_connected_puzzle(const Graph& g) {
  if (is_connected(g)) return;
  const auto parts = connected_components(g);
  throw InputError("puzzle graph is disconnected (" + std::to_string(parts.size()) +
                   " components); a connected puzzle is required");
}

Graph graph_from_file(const std::filesystem::path& path, GraphRole role) {
  Graph g = read_edge_list_file(path);
  if (role == GraphRole::kPuzzle) require_connected_puzzle(g);
  return g;
}

}  // namespace jigsaw
