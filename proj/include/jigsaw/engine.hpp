#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "jigsaw/disjoint_set.hpp"
#include "jigsaw/graph.hpp"

namespace jigsaw {

enum class MergeRule {
  // Clusters merge when people-adjacent and puzzle-adjacent.
  kStandard,
  // Additionally one vertex must carry both witnesses: some u in U has a
  // puzzle neighbour and a people neighbour in W (either orientation).
  kAdjacentEdge,
};

enum class PuzzleCheck { kRequireConnected, kAllowDisconnected };

// People and puzzle graphs over a shared vertex set. Graphs are held by
// shared const pointer so one puzzle can back many concurrent instances.
class JigsawInstance {
 public:
  JigsawInstance(Graph people, Graph puzzle,
                 PuzzleCheck check = PuzzleCheck::kRequireConnected);
  JigsawInstance(std::shared_ptr<const Graph> people, std::shared_ptr<const Graph> puzzle,
                 PuzzleCheck check = PuzzleCheck::kRequireConnected);

  std::size_t vertex_count() const { return puzzle_->vertex_count(); }
  const Graph& people() const { return *people_; }
  const Graph& puzzle() const { return *puzzle_; }

 private:
  std::shared_ptr<const Graph> people_;
  std::shared_ptr<const Graph> puzzle_;
};

// Partition C_i after `round` rounds (round 1 = components of the edge
// intersection).
struct ClusterState {
  DisjointSet clusters;
  std::size_t round = 0;

  std::size_t cluster_count() const { return clusters.set_count(); }
  // Label of each vertex: smallest member of its cluster.
  std::vector<VertexId> labels() const;
  Partition partition() const;
};

struct StepResult {
  ClusterState state;
  bool merged_any = false;
};

ClusterState initial_round(const JigsawInstance& inst);

// One synchronous round: every mergeable cluster pair is found from scratch,
// and whole chains of mergeable pairs collapse together.
StepResult step(const JigsawInstance& inst, ClusterState state, MergeRule rule);

struct TrialOutcome {
  bool solved = false;
  // N_n, the smallest i with C_i = C_{i+1}. Absent for the contraction engine.
  std::optional<std::size_t> rounds;
  std::size_t final_cluster_count = 0;
  std::size_t largest_cluster = 0;
  std::map<std::size_t, std::size_t> histogram;  // cluster size -> count
  std::vector<VertexId> labels;                  // final cluster, as smallest member
  // Cluster count of C_1, C_2, ..., C_N (empty for the contraction engine).
  std::vector<std::size_t> cluster_counts;

  Partition partition() const { return partition_from_labels(labels); }
};

// Synchronous dynamics to the fixed point. The standard rule uses an
// incremental engine that only re-examines clusters merged in the previous
// round; the adjacent-edge rule iterates `step`.
TrialOutcome run(const JigsawInstance& inst, MergeRule rule = MergeRule::kStandard);

// Same dynamics as `run`, always by iterating `step`.
TrialOutcome run_stepwise(const JigsawInstance& inst, MergeRule rule = MergeRule::kStandard);

// Standard rule on a raw people edge list (duplicates and self-loops are
// harmless). Avoids building a Graph in Monte Carlo loops.
TrialOutcome run_edges(const Graph& puzzle, std::span<const Edge> people_edges);

// Asynchronous worklist contraction to the same fixed point; no round count.
// The adjacent-edge rule falls back to `run`.
TrialOutcome run_contraction(const JigsawInstance& inst, MergeRule rule = MergeRule::kStandard);

// True when the people graph induced on `subset` solves the induced puzzle.
// Throws InputError for an empty subset or a disconnected induced puzzle.
bool is_internally_solved(const JigsawInstance& inst, std::span<const VertexId> subset);

// Contraction state that accepts people edges one at a time. After each
// insertion the partition is the fixed point for the edges seen so far, so
// feeding edges in coupling-weight order finds the exact solve threshold of a
// sample in one pass.
class IncrementalContraction {
 public:
  explicit IncrementalContraction(const Graph& puzzle);

  void add_people_edge(VertexId u, VertexId v);

  std::size_t cluster_count() const { return clusters_.set_count(); }
  bool solved() const { return clusters_.set_count() <= 1; }
  std::vector<VertexId> labels() const;

 private:
  static constexpr std::uint8_t kPeople = 1;
  static constexpr std::uint8_t kPuzzle = 2;
  static constexpr std::uint8_t kBoth = kPeople | kPuzzle;

  void mark(VertexId a, VertexId b, std::uint8_t flag);
  void drain();
  void merge(VertexId a, VertexId b);

  DisjointSet clusters_;
  // For each cluster root: neighbouring cluster root -> adjacency flags.
  std::vector<std::unordered_map<VertexId, std::uint8_t>> adjacent_;
  std::vector<std::pair<VertexId, VertexId>> pending_;
};

}  // namespace jigsaw
