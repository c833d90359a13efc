#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeshield/graph.hpp"
#include "treeshield/ranking.hpp"

namespace treeshield {

/// Horizon value meaning "observe the cascade forever".
inline constexpr double kNoHorizon = std::numeric_limits<double>::infinity();

/// Result of one diffusion run from a source under a blocked-node set.
struct DiffusionOutcome {
  /// Nodes whose earliest arrival is within the horizon, ascending.
  std::vector<NodeIndex> reached;
  /// Earliest arrival time per dense index (cumulative latency from the
  /// source); +inf for blocked or unreachable nodes. Recorded even for
  /// nodes arriving after the horizon.
  std::vector<double> arrival;
  /// The blocked set actually applied: ascending, deduplicated.
  std::vector<NodeIndex> blocked;
  /// |reached| of the same run with an empty blocked set.
  std::size_t baseline_reached = 0;
  /// baseline_reached - |reached|: nodes the intervention protected.
  std::size_t saved = 0;
};

/// Deterministic earliest-arrival diffusion: content departs the source at
/// time 0 and traverses each edge in its cost; blocked nodes never receive
/// or forward. A node is reached when its earliest arrival is <= horizon.
///
/// Throws UnknownNodeError when source or any blocked index is not a graph
/// node, SourceBlockedError when the blocked set contains the source.
DiffusionOutcome simulate_diffusion(const WeightedDigraph& graph, NodeIndex source,
                                    std::span<const NodeIndex> blocked,
                                    double horizon = kNoHorizon);

/// A rule for choosing which k nodes to block. The source itself is never
/// eligible under any policy (the saving metric measures protection of the
/// rest of the network).
struct BlockingPolicy {
  enum class Kind {
    RankedTopK,  // top-k of the blocking order computed from the tree
    RandomK,     // k nodes drawn uniformly at random (seeded)
    OutDegreeK,  // k nodes of highest out-degree (ties by ascending index)
  };

  Kind kind = Kind::RankedTopK;
  std::size_t k = 0;
  TimingStrategy strategy = TimingStrategy::Average;  // RankedTopK only
  std::uint64_t seed = 0;                             // RandomK only

  static BlockingPolicy ranked_top_k(std::size_t k, TimingStrategy strategy);
  static BlockingPolicy random_k(std::size_t k, std::uint64_t seed);
  static BlockingPolicy out_degree_k(std::size_t k);
};

std::string_view to_string(BlockingPolicy::Kind kind);

/// The nodes a policy blocks on this graph, in the policy's preference
/// order, at most k of them, never including the source.
std::vector<NodeIndex> select_blocked(const WeightedDigraph& graph, NodeIndex source,
                                      const BlockingPolicy& policy);

struct PolicyOutcome {
  std::size_t saved = 0;
  std::vector<NodeIndex> blocked;  // ascending
  std::size_t reached = 0;
};

/// select_blocked followed by simulate_diffusion.
PolicyOutcome evaluate_policy(const WeightedDigraph& graph, NodeIndex source,
                              const BlockingPolicy& policy, double horizon = kNoHorizon);

struct PolicyComparisonRow {
  std::size_t k = 0;
  BlockingPolicy::Kind policy = BlockingPolicy::Kind::RankedTopK;
  std::optional<TimingStrategy> strategy;  // engaged for RankedTopK rows
  std::size_t saved = 0;
  std::size_t reached = 0;
};

struct PolicyComparison {
  std::vector<PolicyComparisonRow> rows;
};

/// Evaluates every policy at every k of the grid (sorted, deduplicated):
/// one RankedTopK row per strategy, then OutDegreeK, then RandomK. RandomK
/// draws a per-k seed from `seed` deterministically.
PolicyComparison compare_policies(const WeightedDigraph& graph, NodeIndex source,
                                  std::span<const std::size_t> k_grid,
                                  std::span<const TimingStrategy> strategies,
                                  double horizon = kNoHorizon, std::uint64_t seed = 0);

/// CSV with header `k,policy,strategy,saved,reached` and LF line endings;
/// the strategy cell is `-` for strategy-free policies.
std::string to_csv(const PolicyComparison& comparison);

}  // namespace treeshield
