#include "treeshield/arborescence.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

#include "treeshield/errors.hpp"

namespace treeshield {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_node(const WeightedDigraph& graph, NodeIndex v, const char* role) {
  if (!graph.contains(v)) {
    throw UnknownNodeError(std::string(role) + " index " + std::to_string(v) +
                           " is not a node of the graph");
  }
}

// Vertex frontier of the growth loop: the nodes whose distances changed in
// the previous round and the ones collected for the next round.
struct FrontierState {
  std::vector<NodeIndex> current;
  std::vector<NodeIndex> next;

  void advance() {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.swap(next);
    next.clear();
  }
};

}  // namespace

PropagationTree::PropagationTree(const WeightedDigraph& graph, NodeIndex root,
                                 std::vector<NodeIndex> parent,
                                 std::vector<double> parent_cost,
                                 std::vector<double> distance)
    : graph_(&graph),
      root_(root),
      parent_(std::move(parent)),
      parent_cost_(std::move(parent_cost)),
      distance_(std::move(distance)) {
  const std::size_t n = graph.node_count();
  if (root >= n || parent_.size() != n || parent_cost_.size() != n || distance_.size() != n) {
    throw std::invalid_argument("PropagationTree: inconsistent construction arrays");
  }
  if (parent_[root_] != kInvalidNode) {
    throw std::invalid_argument("PropagationTree: root must have no parent");
  }

  for (NodeIndex v = 0; v < n; ++v) {
    if (contains(v)) members_.push_back(v);
  }

  // Walk parent links once per node, with memoized depths, to reject cycles
  // and links into non-members.
  std::vector<std::uint8_t> state(n, 0);  // 0 = unseen, 1 = on path, 2 = done
  std::vector<NodeIndex> path;
  for (NodeIndex m : members_) {
    NodeIndex v = m;
    path.clear();
    while (state[v] == 0 && v != root_) {
      state[v] = 1;
      path.push_back(v);
      NodeIndex p = parent_[v];
      if (!contains(p)) {
        throw std::invalid_argument("PropagationTree: parent link leaves the member set");
      }
      if (state[p] == 1) throw std::invalid_argument("PropagationTree: parent links form a cycle");
      v = p;
    }
    for (NodeIndex q : path) state[q] = 2;
  }

  child_offsets_.assign(n + 1, 0);
  for (NodeIndex m : members_) {
    if (m != root_) child_offsets_[parent_[m] + 1]++;
  }
  for (std::size_t i = 1; i <= n; ++i) child_offsets_[i] += child_offsets_[i - 1];
  children_.resize(members_.empty() ? 0 : members_.size() - 1);
  std::vector<std::size_t> cursor(child_offsets_.begin(), child_offsets_.end() - 1);
  for (NodeIndex m : members_) {  // ascending, so children lists stay sorted
    if (m != root_) children_[cursor[parent_[m]]++] = m;
  }

  top_down_.reserve(members_.size());
  top_down_.push_back(root_);
  for (std::size_t i = 0; i < top_down_.size(); ++i) {
    for (NodeIndex c : children(top_down_[i])) top_down_.push_back(c);
  }
  assert(top_down_.size() == members_.size());
}

PropagationTree build_propagation_tree(const WeightedDigraph& graph, NodeIndex root,
                                       BuildStats& stats) {
  require_node(graph, root, "root");
  const std::size_t n = graph.node_count();

  std::vector<NodeIndex> parent(n, kInvalidNode);
  std::vector<double> parent_cost(n, 0.0);
  std::vector<double> dist(n, kInf);
  std::vector<std::uint8_t> claimed(n, 0);

  dist[root] = 0.0;
  claimed[root] = 1;

  stats = BuildStats{};
  FrontierState frontier;
  frontier.current.push_back(root);

  while (!frontier.current.empty()) {
    stats.rounds++;
    assert(stats.rounds <= n);
    for (NodeIndex u : frontier.current) {
      for (const Edge& e : graph.out_edges(u)) {
        stats.inspections++;
        const NodeIndex v = e.dst;
        if (v == root) continue;  // edges into the root are discarded up front
        const double candidate = dist[u] + e.cost;
        if (!claimed[v]) {
          claimed[v] = 1;
          parent[v] = u;
          parent_cost[v] = e.cost;
          dist[v] = candidate;
          frontier.next.push_back(v);
        } else if (candidate < dist[v] - kImprovementTolerance) {
          // Cheaper route through u: swap v's parent edge and revisit v so
          // its subtree distances catch up in later rounds.
          parent[v] = u;
          parent_cost[v] = e.cost;
          dist[v] = candidate;
          frontier.next.push_back(v);
        }
      }
    }
    frontier.advance();
  }

  return PropagationTree(graph, root, std::move(parent), std::move(parent_cost),
                         std::move(dist));
}

PropagationTree build_propagation_tree(const WeightedDigraph& graph, NodeIndex root) {
  BuildStats stats;
  return build_propagation_tree(graph, root, stats);
}

std::size_t inspection_count(const WeightedDigraph& graph, NodeIndex root) {
  BuildStats stats;
  build_propagation_tree(graph, root, stats);
  return stats.inspections;
}

std::vector<double> shortest_path_oracle(const WeightedDigraph& graph, NodeIndex root) {
  require_node(graph, root, "root");
  std::vector<double> dist(graph.node_count(), kInf);
  dist[root] = 0.0;

  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, root);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;  // stale entry
    for (const Edge& e : graph.out_edges(u)) {
      const double nd = d + e.cost;
      if (nd < dist[e.dst]) {
        dist[e.dst] = nd;
        heap.emplace(nd, e.dst);
      }
    }
  }
  return dist;
}

}  // namespace treeshield
