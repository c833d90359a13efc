#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeshield/arborescence.hpp"
#include "treeshield/graph.hpp"

namespace treeshield {

// How the timing term f_t(n) summarizes the latencies of a node's child
// edges. Average and Median work on min-max normalized latencies; Ratio is
// min/max over the raw latencies (normalizing first would pin it to 0).
enum class TimingStrategy { Average, Median, Ratio };

inline constexpr std::array<TimingStrategy, 3> kAllStrategies = {
    TimingStrategy::Average, TimingStrategy::Median, TimingStrategy::Ratio};

std::string_view to_string(TimingStrategy strategy);
std::optional<TimingStrategy> timing_strategy_from_name(std::string_view name);

// Score decomposition for one tree node:
//   rank = height_term + area_term + (1 - timing_term)
struct NodeScore {
  NodeIndex node = kInvalidNode;
  double height_term = 0.0;  // subtree height / tree height (0 when 0/0)
  double area_term = 0.0;    // descendant count / root descendant count
  double timing_term = 0.0;  // f_t under the chosen strategy, 0 for leaves
  double rank = 0.0;
};

// Full ranking of a tree: scores sorted by rank descending (ties by
// ascending dense index), i.e. the blocking order.
struct HarmReport {
  TimingStrategy strategy = TimingStrategy::Average;
  std::size_t tree_height = 0;  // height of the whole tree, in edges
  std::size_t tree_area = 0;    // proper descendants of the root
  std::vector<NodeScore> scores;
};

// Maximum edge count from n down to any descendant leaf; 0 for leaves.
// Throws UnknownNodeError when n is not a tree member.
std::size_t subtree_height(const PropagationTree& tree, NodeIndex n);

// Number of proper descendants of n; 0 for leaves.
// Throws UnknownNodeError when n is not a tree member.
std::size_t subtree_area(const PropagationTree& tree, NodeIndex n);

// Min-max normalization: (t - min) / (max - min) elementwise; every output
// is 0.5 when min == max. Throws EmptyListError on an empty input.
std::vector<double> normalize_timestamps(std::span<const double> values);

// f_t(n) over the latencies of n's child edges; 0 for leaves under every
// strategy. Throws UnknownNodeError when n is not a tree member.
double timing_term(const PropagationTree& tree, NodeIndex n, TimingStrategy strategy);

// Score a single node. Throws UnknownNodeError when n is not a tree member.
NodeScore rank_node(const PropagationTree& tree, NodeIndex n, TimingStrategy strategy);

// Score every member and sort into the blocking order.
HarmReport rank_tree(const PropagationTree& tree, TimingStrategy strategy);

// First min(k, |scores|) entries of the blocking order.
std::span<const NodeScore> top_k(const HarmReport& report, std::size_t k);

// Share of scored nodes falling into the harmfulness buckets. Fractions are
// taken over the entries with rank > 1, so they sum to 1 whenever any such
// entry exists; entries at rank <= 1 (leaves land exactly at 1) are counted
// separately.
struct BucketDistribution {
  double harmful_fraction = 0.0;       // rank in (1, 2]
  double very_harmful_fraction = 0.0;  // rank in (2, 3]
  std::size_t unit_rank_count = 0;     // rank <= 1
};

BucketDistribution bucket_distribution(std::span<const NodeScore> scores);
BucketDistribution bucket_distribution(const HarmReport& report);

// How a corpus-wide top-k pool is assembled before bucketing: either a
// single pool of all scores across trees, or per-tree top-k then pooled.
enum class TopKPooling { PoolAcrossTrees, PerTreeThenPool };

std::string_view to_string(TopKPooling pooling);

BucketDistribution corpus_bucket_distribution(std::span<const HarmReport> reports,
                                              std::size_t k, TopKPooling pooling);

// JSON document with the strategy, tree stats, and the blocking order
// (truncated to k entries when k > 0). Field order is fixed and reals carry
// 9 significant digits, so equal inputs produce byte-identical output.
std::string to_json(const HarmReport& report, const PropagationTree& tree,
                    std::size_t k = 0);

}  // namespace treeshield
