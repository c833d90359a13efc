#include "treeshield/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace treeshield {

std::optional<NodeIndex> WeightedDigraph::find_node(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool WeightedDigraph::has_edge(NodeIndex u, NodeIndex v) const {
  if (!contains(u) || !contains(v)) return false;
  for (const Edge& e : out_edges(u)) {
    if (e.dst == v) return true;
  }
  return false;
}

NodeIndex WeightedDigraph::Builder::intern_node(std::string_view id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  NodeIndex idx = static_cast<NodeIndex>(ids_.size());
  ids_.emplace_back(id);
  index_.emplace(ids_.back(), idx);
  return idx;
}

std::optional<NodeIndex> WeightedDigraph::Builder::find_node(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void WeightedDigraph::Builder::add_edge(NodeIndex u, NodeIndex v, double cost) {
  if (u >= ids_.size() || v >= ids_.size()) {
    throw std::invalid_argument("add_edge: endpoint index out of range");
  }
  if (u == v) {
    throw std::invalid_argument("add_edge: self-loop on '" + ids_[u] + "'");
  }
  if (!std::isfinite(cost) || cost <= 0.0) {
    throw std::invalid_argument("add_edge: cost must be a finite positive value");
  }
  if (!keys_.insert(edge_key(u, v)).second) {
    throw std::invalid_argument("add_edge: duplicate edge '" + ids_[u] + "' -> '" + ids_[v] + "'");
  }
  edges_.push_back(Edge{u, v, cost});
}

WeightedDigraph WeightedDigraph::Builder::build() && {
  WeightedDigraph g;
  g.ids_ = std::move(ids_);
  g.index_ = std::move(index_);

  // CSR: bucket edges by source, keeping insertion order within a source.
  g.offsets_.assign(g.ids_.size() + 1, 0);
  for (const Edge& e : edges_) g.offsets_[e.src + 1]++;
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.edges_.resize(edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges_) g.edges_[cursor[e.src]++] = e;
  return g;
}

}  // namespace treeshield
