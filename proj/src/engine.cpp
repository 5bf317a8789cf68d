#include "jigsaw/engine.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "jigsaw/error.hpp"
#include "jigsaw/generators.hpp"

namespace jigsaw {
namespace {

constexpr std::uint8_t kPeopleFlag = 1;
constexpr std::uint8_t kPuzzleFlag = 2;
constexpr std::uint8_t kBothFlags = kPeopleFlag | kPuzzleFlag;

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<VertexId> min_member_labels(const DisjointSet& uf) {
  const std::size_t n = uf.element_count();
  constexpr VertexId kUnset = ~VertexId{0};
  std::vector<VertexId> root_label(n, kUnset);
  std::vector<VertexId> labels(n);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId r = uf.find(v);
    if (root_label[r] == kUnset) root_label[r] = v;
    labels[v] = root_label[r];
  }
  return labels;
}

TrialOutcome outcome_from(const DisjointSet& uf) {
  TrialOutcome out;
  const std::size_t n = uf.element_count();
  out.labels = min_member_labels(uf);
  std::vector<std::size_t> size(n, 0);
  for (VertexId l : out.labels) ++size[l];
  for (std::size_t s : size) {
    if (s == 0) continue;
    ++out.histogram[s];
    out.largest_cluster = std::max(out.largest_cluster, s);
  }
  out.final_cluster_count = uf.set_count();
  out.solved = out.final_cluster_count <= 1;
  return out;
}

// Unites every edge present in both graphs. Returns whether any such edge exists.
template <typename PeopleEdges>
bool unite_intersection(const Graph& puzzle, PeopleEdges&& for_each_people_edge, DisjointSet& uf) {
  bool any = false;
  for_each_people_edge([&](VertexId u, VertexId v) {
    if (u != v && puzzle.are_adjacent(u, v)) {
      uf.unite(u, v);
      any = true;
    }
  });
  return any;
}

// Synchronous engine for the standard rule. Each cluster root keeps a raw list
// of (neighbour cluster, flags) entries whose keys may be stale roots; a
// cluster's list is normalised only when it is scanned. Only clusters formed
// by a merge in the previous round can take part in a new merge, so after the
// first scan only those are examined.
class SynchronousEngine {
 public:
  template <typename PeopleEdges>
  TrialOutcome run(const Graph& puzzle, PeopleEdges&& for_each_people_edge) {
    const std::size_t n = puzzle.vertex_count();
    DisjointSet uf(n);
    const bool any_intersection = unite_intersection(puzzle, for_each_people_edge, uf);

    std::vector<std::size_t> counts{uf.set_count()};
    adjacent_.assign(n, {});
    flags_.assign(n, 0);

    auto add = [&](VertexId u, VertexId v, std::uint8_t flag) {
      const VertexId a = uf.find(u);
      const VertexId b = uf.find(v);
      if (a == b) return;
      adjacent_[a].emplace_back(b, flag);
      adjacent_[b].emplace_back(a, flag);
    };
    for_each_people_edge([&](VertexId u, VertexId v) { add(u, v, kPeopleFlag); });
    puzzle.for_each_edge([&](VertexId u, VertexId v) { add(u, v, kPuzzleFlag); });

    std::vector<VertexId> active;
    for (VertexId v = 0; v < n; ++v) {
      if (uf.find(v) == v && !adjacent_[v].empty()) active.push_back(v);
    }

    std::size_t round = 1;
    std::vector<std::pair<VertexId, VertexId>> mergeable;
    std::vector<VertexId> involved;
    while (true) {
      mergeable.clear();
      for (VertexId a : active) {
        normalise(a, uf);
        for (const auto& [b, f] : adjacent_[a]) {
          // Pairs of two active clusters show up twice; uniting is idempotent.
          if (f == kBothFlags) mergeable.emplace_back(a, b);
        }
      }
      if (mergeable.empty()) break;
      ++round;

      involved.clear();
      for (const auto& [a, b] : mergeable) {
        involved.push_back(a);
        involved.push_back(b);
      }
      std::sort(involved.begin(), involved.end());
      involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
      for (const auto& [a, b] : mergeable) uf.unite(a, b);

      active.clear();
      for (VertexId old : involved) {
        const VertexId r = uf.find(old);
        if (old != r) {
          auto& into = adjacent_[r];
          auto& from = adjacent_[old];
          into.insert(into.end(), from.begin(), from.end());
          from.clear();
          from.shrink_to_fit();
        } else {
          active.push_back(r);
        }
      }
      counts.push_back(uf.set_count());
    }

    TrialOutcome out = outcome_from(uf);
    out.rounds = any_intersection ? round : 0;
    if (!any_intersection) counts.clear();
    out.cluster_counts = std::move(counts);
    return out;
  }

 private:
  // Re-keys a's entries by current root, drops internal ones, ORs duplicates.
  void normalise(VertexId a, DisjointSet& uf) {
    auto& list = adjacent_[a];
    touched_.clear();
    for (const auto& [b, f] : list) {
      const VertexId r = uf.find(b);
      if (r == a) continue;
      if (flags_[r] == 0) touched_.push_back(r);
      flags_[r] |= f;
    }
    list.clear();
    for (VertexId r : touched_) {
      list.emplace_back(r, flags_[r]);
      flags_[r] = 0;
    }
  }

  std::vector<std::vector<std::pair<VertexId, std::uint8_t>>> adjacent_;
  std::vector<std::uint8_t> flags_;
  std::vector<VertexId> touched_;
};

std::vector<std::pair<VertexId, VertexId>> mergeable_pairs_standard(const JigsawInstance& inst,
                                                                    DisjointSet& uf) {
  std::unordered_set<std::uint64_t> people_pairs;
  inst.people().for_each_edge([&](VertexId u, VertexId v) {
    const VertexId a = uf.find(u);
    const VertexId b = uf.find(v);
    if (a != b) people_pairs.insert(pair_key(a, b));
  });
  std::vector<std::pair<VertexId, VertexId>> out;
  inst.puzzle().for_each_edge([&](VertexId u, VertexId v) {
    const VertexId a = uf.find(u);
    const VertexId b = uf.find(v);
    if (a != b && people_pairs.contains(pair_key(a, b))) out.emplace_back(a, b);
  });
  return out;
}

std::vector<std::pair<VertexId, VertexId>> mergeable_pairs_adjacent_edge(
    const JigsawInstance& inst, DisjointSet& uf) {
  const std::size_t n = inst.vertex_count();
  std::vector<std::uint8_t> via_puzzle(n, 0);
  std::vector<VertexId> touched;
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 0; u < n; ++u) {
    const VertexId a = uf.find(u);
    touched.clear();
    for (VertexId w : inst.puzzle().neighbors(u)) {
      const VertexId b = uf.find(w);
      if (b != a && !via_puzzle[b]) {
        via_puzzle[b] = 1;
        touched.push_back(b);
      }
    }
    for (VertexId w : inst.people().neighbors(u)) {
      const VertexId b = uf.find(w);
      if (b != a && via_puzzle[b]) out.emplace_back(a, b);
    }
    for (VertexId b : touched) via_puzzle[b] = 0;
  }
  return out;
}

}  // namespace

JigsawInstance::JigsawInstance(Graph people, Graph puzzle, PuzzleCheck check)
    : JigsawInstance(std::make_shared<const Graph>(std::move(people)),
                     std::make_shared<const Graph>(std::move(puzzle)), check) {}

JigsawInstance::JigsawInstance(std::shared_ptr<const Graph> people,
                               std::shared_ptr<const Graph> puzzle, PuzzleCheck check)
    : people_(std::move(people)), puzzle_(std::move(puzzle)) {
  if (!people_ || !puzzle_) throw InputError("instance needs both graphs");
  if (people_->vertex_count() != puzzle_->vertex_count()) {
    throw InputError("people graph has " + std::to_string(people_->vertex_count()) +
                     " vertices but puzzle graph has " + std::to_string(puzzle_->vertex_count()));
  }
  if (check == PuzzleCheck::kRequireConnected) require_connected_puzzle(*puzzle_);
}

std::vector<VertexId> ClusterState::labels() const { return min_member_labels(clusters); }

Partition ClusterState::partition() const { return partition_from_labels(labels()); }

ClusterState initial_round(const JigsawInstance& inst) {
  ClusterState state{DisjointSet(inst.vertex_count()), 1};
  unite_intersection(
      inst.puzzle(), [&](auto&& f) { inst.people().for_each_edge(f); }, state.clusters);
  return state;
}

StepResult step(const JigsawInstance& inst, ClusterState state, MergeRule rule) {
  const std::size_t before = state.cluster_count();
  const auto pairs = rule == MergeRule::kStandard
                         ? mergeable_pairs_standard(inst, state.clusters)
                         : mergeable_pairs_adjacent_edge(inst, state.clusters);
  // Uniting every mergeable pair is the component closure of the cluster graph.
  for (const auto& [a, b] : pairs) state.clusters.unite(a, b);
  ++state.round;
  const bool merged = state.cluster_count() < before;
  return {std::move(state), merged};
}

TrialOutcome run_stepwise(const JigsawInstance& inst, MergeRule rule) {
  ClusterState state = initial_round(inst);
  const bool any_intersection = state.cluster_count() < inst.vertex_count();
  std::vector<std::size_t> counts{state.cluster_count()};
  std::size_t last_round = state.round;
  while (true) {
    auto [next, merged] = step(inst, std::move(state), rule);
    state = std::move(next);
    if (!merged) break;
    last_round = state.round;
    counts.push_back(state.cluster_count());
  }
  TrialOutcome out = outcome_from(state.clusters);
  out.rounds = any_intersection ? last_round : 0;
  if (!any_intersection) counts.clear();
  out.cluster_counts = std::move(counts);
  return out;
}

TrialOutcome run_edges(const Graph& puzzle, std::span<const Edge> people_edges) {
  for (const auto& [u, v] : people_edges) {
    if (u >= puzzle.vertex_count() || v >= puzzle.vertex_count()) {
      throw InputError("people edge endpoint outside the puzzle's vertex range");
    }
  }
  SynchronousEngine engine;
  return engine.run(puzzle, [&](auto&& f) {
    for (const auto& [u, v] : people_edges) f(u, v);
  });
}

TrialOutcome run(const JigsawInstance& inst, MergeRule rule) {
  if (rule == MergeRule::kAdjacentEdge) return run_stepwise(inst, rule);
  SynchronousEngine engine;
  return engine.run(inst.puzzle(), [&](auto&& f) { inst.people().for_each_edge(f); });
}

TrialOutcome run_contraction(const JigsawInstance& inst, MergeRule rule) {
  if (rule == MergeRule::kAdjacentEdge) return run(inst, rule);
  IncrementalContraction contraction(inst.puzzle());
  inst.people().for_each_edge([&](VertexId u, VertexId v) { contraction.add_people_edge(u, v); });
  TrialOutcome out;
  out.labels = contraction.labels();
  std::vector<std::size_t> size(inst.vertex_count(), 0);
  for (VertexId l : out.labels) ++size[l];
  for (std::size_t s : size) {
    if (s == 0) continue;
    ++out.histogram[s];
    out.largest_cluster = std::max(out.largest_cluster, s);
  }
  out.final_cluster_count = contraction.cluster_count();
  out.solved = contraction.solved();
  return out;
}

bool is_internally_solved(const JigsawInstance& inst, std::span<const VertexId> subset) {
  if (subset.empty()) throw InputError("internally-solved check needs a nonempty subset");
  Graph puzzle = induced_subgraph(inst.puzzle(), subset);
  if (!is_connected(puzzle)) {
    throw InputError("puzzle graph induced on the subset is disconnected");
  }
  JigsawInstance sub(induced_subgraph(inst.people(), subset), std::move(puzzle),
                     PuzzleCheck::kAllowDisconnected);
  return run(sub).solved;
}

IncrementalContraction::IncrementalContraction(const Graph& puzzle)
    : clusters_(puzzle.vertex_count()), adjacent_(puzzle.vertex_count()) {
  puzzle.for_each_edge([&](VertexId u, VertexId v) { mark(u, v, kPuzzle); });
  drain();
}

void IncrementalContraction::add_people_edge(VertexId u, VertexId v) {
  if (u >= adjacent_.size() || v >= adjacent_.size()) {
    throw InputError("people edge endpoint outside the puzzle's vertex range");
  }
  mark(u, v, kPeople);
  drain();
}

std::vector<VertexId> IncrementalContraction::labels() const {
  return min_member_labels(clusters_);
}

void IncrementalContraction::mark(VertexId u, VertexId v, std::uint8_t flag) {
  const VertexId a = clusters_.find(u);
  const VertexId b = clusters_.find(v);
  if (a == b) return;
  auto& ab = adjacent_[a][b];
  ab |= flag;
  adjacent_[b][a] |= flag;
  if (ab == kBoth) pending_.emplace_back(a, b);
}

void IncrementalContraction::drain() {
  while (!pending_.empty()) {
    const auto [x, y] = pending_.back();
    pending_.pop_back();
    const VertexId a = clusters_.find(x);
    const VertexId b = clusters_.find(y);
    // Flags only accumulate, so a pair that was mergeable still is.
    if (a != b) merge(a, b);
  }
}

void IncrementalContraction::merge(VertexId a, VertexId b) {
  // Keep the root with the larger map; only the smaller map is rewritten.
  if (adjacent_[a].size() < adjacent_[b].size()) std::swap(a, b);
  clusters_.link(a, b);
  auto gone = std::move(adjacent_[b]);
  adjacent_[b].clear();
  auto& keep = adjacent_[a];
  keep.erase(b);
  for (const auto& [c, f] : gone) {
    if (c == a) continue;
    auto& theirs = adjacent_[c];
    theirs.erase(b);
    theirs[a] |= f;
    auto& mine = keep[c];
    mine |= f;
    if (mine == kBoth) pending_.emplace_back(a, c);
  }
}

}  // namespace jigsaw
