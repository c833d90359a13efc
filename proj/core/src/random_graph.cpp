#include "treeshield/random_graph.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "treeshield/rng.hpp"

namespace treeshield {

namespace {

WeightedDigraph::Builder make_nodes(std::size_t nodes) {
  WeightedDigraph::Builder b;
  for (std::size_t i = 0; i < nodes; ++i) b.intern_node("n" + std::to_string(i));
  return b;
}

}  // namespace

WeightedDigraph random_digraph(std::size_t nodes, std::size_t edges, std::uint64_t seed,
                               double max_cost) {
  if (nodes == 0) throw std::invalid_argument("random_digraph: nodes must be >= 1");
  if (edges > nodes * (nodes - 1)) {
    throw std::invalid_argument("random_digraph: more edges than distinct ordered pairs");
  }
  WeightedDigraph::Builder b = make_nodes(nodes);
  std::mt19937_64 gen(seed);
  std::unordered_set<std::uint64_t> used;
  used.reserve(edges * 2);
  for (std::size_t i = 0; i < edges; ++i) {
    NodeIndex u, v;
    do {
      u = static_cast<NodeIndex>(rng::uniform_below(gen, nodes));
      // Pick v uniformly among the nodes other than u.
      auto w = rng::uniform_below(gen, nodes - 1);
      v = static_cast<NodeIndex>(w >= u ? w + 1 : w);
    } while (!used.insert((static_cast<std::uint64_t>(u) << 32) | v).second);
    b.add_edge(u, v, rng::uniform_positive(gen, max_cost));
  }
  return std::move(b).build();
}

WeightedDigraph random_tree_digraph(std::size_t nodes, std::uint64_t seed, double max_cost) {
  if (nodes == 0) throw std::invalid_argument("random_tree_digraph: nodes must be >= 1");
  WeightedDigraph::Builder b = make_nodes(nodes);
  std::mt19937_64 gen(seed);
  for (std::size_t i = 1; i < nodes; ++i) {
    auto parent = static_cast<NodeIndex>(rng::uniform_below(gen, i));
    b.add_edge(parent, static_cast<NodeIndex>(i), rng::uniform_positive(gen, max_cost));
  }
  return std::move(b).build();
}

}  // namespace treeshield
