#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treeshield/graph.hpp"

namespace treeshield {

/// Strict-improvement threshold for the relaxation test: a candidate path
/// replaces the incumbent only if it is shorter by more than this.
inline constexpr double kImprovementTolerance = 1e-9;

/// Arborescence rooted at a source node: every member is reachable from the
/// root along exactly one chain of parent links, and distance(v) is the
/// cumulative edge cost of that chain.
///
/// The tree keeps a pointer to the graph it was built from (for node ids and
/// membership queries); the graph must outlive the tree.
class PropagationTree {
 public:
  /// Assembles a tree from per-node parent links. `parent[root]` must be
  /// kInvalidNode; nodes with parent == kInvalidNode other than the root are
  /// non-members. Throws std::invalid_argument if the links contain a cycle
  /// or refer to non-members.
  PropagationTree(const WeightedDigraph& graph, NodeIndex root,
                  std::vector<NodeIndex> parent, std::vector<double> parent_cost,
                  std::vector<double> distance);

  const WeightedDigraph& graph() const { return *graph_; }
  NodeIndex root() const { return root_; }

  std::size_t size() const { return members_.size(); }
  bool contains(NodeIndex v) const {
    return v < parent_.size() && (v == root_ || parent_[v] != kInvalidNode);
  }

  /// Members in ascending dense-index order.
  std::span<const NodeIndex> members() const { return members_; }

  /// kInvalidNode for the root.
  NodeIndex parent(NodeIndex v) const { return parent_[v]; }
  /// Cost of the edge parent(v) -> v. Meaningless for the root.
  double parent_cost(NodeIndex v) const { return parent_cost_[v]; }
  /// Cumulative cost of the tree path root -> v. +inf for non-members.
  double distance(NodeIndex v) const { return distance_[v]; }

  /// Children of v in ascending dense-index order.
  std::span<const NodeIndex> children(NodeIndex v) const {
    return {children_.data() + child_offsets_[v], children_.data() + child_offsets_[v + 1]};
  }

  /// Members ordered root-first so that every node appears before its
  /// children (breadth-first over the tree).
  std::span<const NodeIndex> top_down_order() const { return top_down_; }

 private:
  const WeightedDigraph* graph_;
  NodeIndex root_;
  std::vector<NodeIndex> parent_;
  std::vector<double> parent_cost_;
  std::vector<double> distance_;
  std::vector<NodeIndex> members_;
  std::vector<NodeIndex> children_;
  std::vector<std::size_t> child_offsets_;
  std::vector<NodeIndex> top_down_;
};

/// Counters reported by build_propagation_tree: how many frontier rounds the
/// growth loop ran and how many (vertex, edge) inspections it performed.
/// Rounds never exceed |V| and inspections never exceed |V|*|E|.
struct BuildStats {
  std::size_t rounds = 0;
  std::size_t inspections = 0;
};

/// Grows the minimum-cost weighted directed spanning tree rooted at `root`:
/// starting from the root, frontier nodes claim unseen successors and
/// re-parent already-claimed ones whenever the path through the frontier
/// node is cheaper, until no distance improves. Edges into the root are
/// discarded up front. The result spans exactly the nodes reachable from
/// `root`, and every member's distance equals the minimum path cost from the
/// root.
///
/// Deterministic: frontier nodes are processed in ascending dense-index
/// order and an incumbent parent is kept on ties.
///
/// Throws UnknownNodeError if `root` is not a node of `graph`.
PropagationTree build_propagation_tree(const WeightedDigraph& graph, NodeIndex root);
PropagationTree build_propagation_tree(const WeightedDigraph& graph, NodeIndex root,
                                       BuildStats& stats);

/// Number of (vertex, edge) inspection steps build_propagation_tree performs
/// on this input. Bounded by |V|*|E|.
std::size_t inspection_count(const WeightedDigraph& graph, NodeIndex root);

/// Independent single-source shortest-path distances (binary-heap Dijkstra),
/// used to cross-check the tree builder. Returns one distance per dense
/// index, +inf for nodes unreachable from `root`.
///
/// Throws UnknownNodeError if `root` is not a node of `graph`.
std::vector<double> shortest_path_oracle(const WeightedDigraph& graph, NodeIndex root);

}  // namespace treeshield
