#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace treeshield {

/// Dense node index, assigned in first-appearance order at load time.
using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kInvalidNode = static_cast<NodeIndex>(-1);

/// A directed edge carrying a positive propagation latency.
struct Edge {
  NodeIndex src;
  NodeIndex dst;
  double cost;
};

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
struct StringEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
};
using NodeIndexMap = std::unordered_map<std::string, NodeIndex, StringHash, StringEq>;
}  // namespace detail

/// Immutable weighted directed graph.
///
/// Node ids are opaque string tokens mapped to contiguous dense indices
/// 0..node_count()-1 in first-appearance order. Construction (through
/// Builder) rejects self-loops, non-positive costs, and parallel edges.
/// Once built, a graph never changes and may be shared freely across
/// threads.
class WeightedDigraph {
 public:
  class Builder;

  WeightedDigraph() = default;

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& node_id(NodeIndex v) const { return ids_[v]; }
  std::optional<NodeIndex> find_node(std::string_view id) const;
  bool contains(NodeIndex v) const { return v < ids_.size(); }

  /// Out-edges of v in insertion order.
  std::span<const Edge> out_edges(NodeIndex v) const {
    return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
  }
  std::size_t out_degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// All edges, grouped by source index (insertion order within a source).
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(NodeIndex u, NodeIndex v) const;

 private:
  friend class Builder;
  std::vector<std::string> ids_;
  detail::NodeIndexMap index_;
  std::vector<Edge> edges_;           // CSR payload
  std::vector<std::size_t> offsets_;  // node_count()+1 entries
};

/// Accumulates nodes and edges, validating graph invariants as they are
/// added, then freezes the result into a WeightedDigraph.
class WeightedDigraph::Builder {
 public:
  /// Returns the dense index for `id`, creating it on first appearance.
  NodeIndex intern_node(std::string_view id);
  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::size_t node_count() const { return ids_.size(); }

  bool has_edge(NodeIndex u, NodeIndex v) const {
    return keys_.count(edge_key(u, v)) != 0;
  }

  /// Throws std::invalid_argument on out-of-range endpoints, self-loops,
  /// non-finite or non-positive costs, and duplicate (u, v) pairs.
  void add_edge(NodeIndex u, NodeIndex v, double cost);

  WeightedDigraph build() &&;

 private:
  static std::uint64_t edge_key(NodeIndex u, NodeIndex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  std::vector<std::string> ids_;
  detail::NodeIndexMap index_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

}  // namespace treeshield
