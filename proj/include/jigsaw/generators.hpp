#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "jigsaw/graph.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

// Deterministic puzzle graphs.

// Edges {i, (i+1) mod n}; n >= 3.
Graph cycle_puzzle(std::size_t n);

// Vertex n-1 adjacent to every other vertex; n >= 2.
Graph star_puzzle(std::size_t n);

// 4-regular wrap-around grid, vertex r*cols + c; rows, cols >= 3.
Graph torus_puzzle(std::size_t rows, std::size_t cols);

// Edges {i, i+1}; n >= 1.
Graph path_puzzle(std::size_t n);

Graph complete_graph(std::size_t n);

// Vertex i >= 1 attaches to a uniformly chosen earlier vertex whose degree is
// still below max_deg. Connected, max degree <= max_deg; needs max_deg >= 2.
Graph random_tree_puzzle(std::size_t n, std::size_t max_deg, Seed seed);

// Random people graphs.

// G(n, p) by geometric skipping over the pair sequence.
Graph erdos_renyi(std::size_t n, double p, Seed seed);

// A pair drawn in the coupled construction: the pair is a people edge at
// probability p exactly when weight < p.
struct WeightedEdge {
  double weight;
  Edge edge;
};

// Every pair whose coupling weight falls below p_max, sorted by weight
// (ties broken by pair). Thresholding the result at any p <= p_max gives a
// G(n, p) sample, and samples at p < p' are nested.
std::vector<WeightedEdge> erdos_renyi_weights(std::size_t n, double p_max, Seed seed);

// Configuration model with P(k) ~ k^-gamma on {1, ..., n-1}; self-loops and
// multi-edges erased. gamma > 2, n >= 2.
Graph power_law_people(std::size_t n, double gamma, Seed seed);

// The i.i.d. degree draw used by power_law_people, after the parity fix-up.
std::vector<std::size_t> power_law_degrees(std::size_t n, double gamma, Rng& rng);

enum class GraphRole { kPeople, kPuzzle };

// Reads an edge-list file; puzzles must be connected.
Graph graph_from_file(const std::filesystem::path& path, GraphRole role);

inline Graph puzzle_from_file(const std::filesystem::path& path) {
  return graph_from_file(path, GraphRole::kPuzzle);
}

// Throws InputError reporting the component count when g is disconnected.
void require_connected_puzzle(const Graph& g);

}  // namespace jigsaw
