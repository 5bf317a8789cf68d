#include <algorithm>
#include <string>

#include "jigsaw/error.hpp"
#include "jigsaw/theory.hpp"

namespace jigsaw {
namespace {

// DFS spanning tree rooted at 0; children kept in discovery order.
struct SpanningTree {
  std::vector<std::vector<VertexId>> children;
  std::vector<VertexId> preorder;
};

SpanningTree dfs_tree(const Graph& g) {
  const std::size_t n = g.vertex_count();
  SpanningTree tree;
  tree.children.resize(n);
  std::vector<bool> seen(n, false);
  std::vector<std::pair<VertexId, std::size_t>> stack{{0, 0}};
  seen[0] = true;
  tree.preorder.push_back(0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto nb = g.neighbors(v);
    if (next == nb.size()) {
      stack.pop_back();
      continue;
    }
    const VertexId w = nb[next++];
    if (seen[w]) continue;
    seen[w] = true;
    tree.children[v].push_back(w);
    tree.preorder.push_back(w);
    stack.emplace_back(w, 0);
  }
  return tree;
}

class Partitioner {
 public:
  Partitioner(const Graph& g, std::size_t m)
      : m_(m), tree_(dfs_tree(g)), removed_(g.vertex_count(), false),
        size_(g.vertex_count(), 0), min_member_(g.vertex_count(), 0) {}

  std::vector<std::vector<VertexId>> run() {
    std::vector<std::vector<VertexId>> blocks;
    while (true) {
      refresh_sizes();
      if (size_[0] <= 2 * m_) {
        blocks.push_back(collect(0));
        break;
      }
      blocks.push_back(next_block());
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    return blocks;
  }

 private:
  // Subtree sizes and minimum members over vertices not yet removed.
  void refresh_sizes() {
    for (auto it = tree_.preorder.rbegin(); it != tree_.preorder.rend(); ++it) {
      const VertexId v = *it;
      if (removed_[v]) continue;
      size_[v] = 1;
      min_member_[v] = v;
      for (VertexId c : tree_.children[v]) {
        if (removed_[c]) continue;
        size_[v] += size_[c];
        min_member_[v] = std::min(min_member_[v], min_member_[c]);
      }
    }
  }

  std::vector<VertexId> live_children(VertexId v) const {
    std::vector<VertexId> kids;
    for (VertexId c : tree_.children[v]) {
      if (!removed_[c]) kids.push_back(c);
    }
    std::sort(kids.begin(), kids.end(),
              [&](VertexId a, VertexId b) { return min_member_[a] < min_member_[b]; });
    return kids;
  }

  // Removes and returns the live subtree under v.
  std::vector<VertexId> take_subtree(VertexId v) {
    auto members = collect(v);
    for (VertexId u : members) removed_[u] = true;
    return members;
  }

  std::vector<VertexId> collect(VertexId v) const {
    std::vector<VertexId> out;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      out.push_back(u);
      for (VertexId c : tree_.children[u]) {
        if (!removed_[c]) stack.push_back(c);
      }
    }
    return out;
  }

  // Remaining tree has more than 2m vertices. Walk down from the root: take a
  // branch whose size lands in [m, 2m]; otherwise descend into a branch larger
  // than 2m; otherwise every branch is below m and a prefix of them plus the
  // current vertex forms a block of size in [m+1, 2m].
  std::vector<VertexId> next_block() {
    VertexId v = 0;
    while (true) {
      const auto kids = live_children(v);
      for (VertexId c : kids) {
        if (size_[c] >= m_ && size_[c] <= 2 * m_) return take_subtree(c);
      }
      const auto big = std::find_if(kids.begin(), kids.end(),
                                    [&](VertexId c) { return size_[c] > 2 * m_; });
      if (big != kids.end()) {
        v = *big;
        continue;
      }
      std::vector<VertexId> block{v};
      std::size_t total = 0;
      for (VertexId c : kids) {
        auto part = take_subtree(c);
        total += part.size();
        block.insert(block.end(), part.begin(), part.end());
        if (total >= m_) break;
      }
      return block;
    }
  }

  std::size_t m_;
  SpanningTree tree_;
  std::vector<bool> removed_;
  std::vector<std::size_t> size_;
  std::vector<VertexId> min_member_;
};

}  // namespace

BlockPartition block_partition(const Graph& puzzle, std::size_t m) {
  if (m < 1) throw InputError("block partition needs m >= 1");
  if (puzzle.vertex_count() == 0) throw InputError("block partition needs a nonempty graph");
  if (!is_connected(puzzle)) throw InputError("block partition needs a connected graph");
  Partitioner partitioner(puzzle, m);
  return {partitioner.run(), m};
}

}  // namespace jigsaw
