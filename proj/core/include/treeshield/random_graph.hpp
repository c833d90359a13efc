#pragma once

#include <cstdint>

#include "treeshield/graph.hpp"

namespace treeshield {

/// Seeded synthetic digraph: `edges` distinct directed edges drawn uniformly
/// over ordered pairs (u != v), costs uniform in (0, max_cost]. Node ids are
/// "n0".."n{nodes-1}". The same (nodes, edges, seed, max_cost) always yields
/// the same graph, on any platform.
///
/// Throws std::invalid_argument if nodes == 0 or edges > nodes*(nodes-1).
WeightedDigraph random_digraph(std::size_t nodes, std::size_t edges, std::uint64_t seed,
                               double max_cost = 10.0);

/// Seeded random arborescence shaped as a digraph: node i in [1, nodes) gets
/// one in-edge from a uniformly chosen earlier node, so every node is
/// reachable from "n0" by exactly one path. Costs uniform in (0, max_cost].
WeightedDigraph random_tree_digraph(std::size_t nodes, std::uint64_t seed,
                                    double max_cost = 10.0);

}  // namespace treeshield
