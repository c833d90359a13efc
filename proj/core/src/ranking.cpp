#include "treeshield/ranking.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "treeshield/errors.hpp"

namespace treeshield {

namespace {

void require_member(const PropagationTree& tree, NodeIndex n) {
  if (!tree.contains(n)) {
    throw UnknownNodeError("node index " + std::to_string(n) + " is not a tree member");
  }
}

// Per-node height (edges to deepest descendant) and area (proper-descendant
// count) for the whole tree, computed bottom-up in one pass.
struct TreeMetrics {
  std::vector<std::size_t> height;
  std::vector<std::size_t> area;
};

TreeMetrics compute_metrics(const PropagationTree& tree) {
  const std::size_t n = tree.graph().node_count();
  TreeMetrics metrics{std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n, 0)};
  const auto order = tree.top_down_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeIndex v = *it;
    std::size_t height = 0;
    std::size_t area = 0;
    for (NodeIndex c : tree.children(v)) {
      height = std::max(height, metrics.height[c] + 1);
      area += metrics.area[c] + 1;
    }
    metrics.height[v] = height;
    metrics.area[v] = area;
  }
  return metrics;
}

std::vector<double> child_edge_costs(const PropagationTree& tree, NodeIndex n) {
  std::vector<double> costs;
  const auto children = tree.children(n);
  costs.reserve(children.size());
  for (NodeIndex c : children) costs.push_back(tree.parent_cost(c));
  return costs;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double timing_from_costs(std::span<const double> costs, TimingStrategy strategy) {
  if (costs.empty()) return 0.0;
  switch (strategy) {
    case TimingStrategy::Average: {
      const auto normalized = normalize_timestamps(costs);
      return std::accumulate(normalized.begin(), normalized.end(), 0.0) /
             static_cast<double>(normalized.size());
    }
    case TimingStrategy::Median:
      return median_of(normalize_timestamps(costs));
    case TimingStrategy::Ratio: {
      const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
      return *lo / *hi;
    }
  }
  return 0.0;  // unreachable
}

NodeScore score_node(NodeIndex n, const TreeMetrics& metrics, std::size_t tree_height,
                     std::size_t tree_area, double f_t) {
  NodeScore score;
  score.node = n;
  score.height_term = tree_height == 0
                          ? 0.0
                          : static_cast<double>(metrics.height[n]) /
                                static_cast<double>(tree_height);
  score.area_term = tree_area == 0 ? 0.0
                                   : static_cast<double>(metrics.area[n]) /
                                         static_cast<double>(tree_area);
  score.timing_term = f_t;
  score.rank = score.height_term + score.area_term + (1.0 - score.timing_term);
  return score;
}

void append_real(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  out += buf;
}

void append_json_string(std::string& out, std::string_view text) {
  out += '"';
  for (char ch : text) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string_view to_string(TimingStrategy strategy) {
  switch (strategy) {
    case TimingStrategy::Average: return "average";
    case TimingStrategy::Median: return "median";
    case TimingStrategy::Ratio: return "ratio";
  }
  return "average";
}

std::optional<TimingStrategy> timing_strategy_from_name(std::string_view name) {
  for (TimingStrategy strategy : kAllStrategies) {
    if (name == to_string(strategy)) return strategy;
  }
  return std::nullopt;
}

std::size_t subtree_height(const PropagationTree& tree, NodeIndex n) {
  require_member(tree, n);
  return compute_metrics(tree).height[n];
}

std::size_t subtree_area(const PropagationTree& tree, NodeIndex n) {
  require_member(tree, n);
  return compute_metrics(tree).area[n];
}

std::vector<double> normalize_timestamps(std::span<const double> values) {
  if (values.empty()) throw EmptyListError("normalize_timestamps: empty input");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  if (*lo == *hi) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / span;
  return out;
}

double timing_term(const PropagationTree& tree, NodeIndex n, TimingStrategy strategy) {
  require_member(tree, n);
  return timing_from_costs(child_edge_costs(tree, n), strategy);
}

NodeScore rank_node(const PropagationTree& tree, NodeIndex n, TimingStrategy strategy) {
  require_member(tree, n);
  const TreeMetrics metrics = compute_metrics(tree);
  const NodeIndex root = tree.root();
  return score_node(n, metrics, metrics.height[root], metrics.area[root],
                    timing_from_costs(child_edge_costs(tree, n), strategy));
}

HarmReport rank_tree(const PropagationTree& tree, TimingStrategy strategy) {
  const TreeMetrics metrics = compute_metrics(tree);
  const NodeIndex root = tree.root();

  HarmReport report;
  report.strategy = strategy;
  report.tree_height = metrics.height[root];
  report.tree_area = metrics.area[root];
  report.scores.reserve(tree.size());
  for (NodeIndex v : tree.members()) {
    report.scores.push_back(score_node(v, metrics, report.tree_height, report.tree_area,
                                       timing_from_costs(child_edge_costs(tree, v), strategy)));
  }
  std::sort(report.scores.begin(), report.scores.end(),
            [](const NodeScore& a, const NodeScore& b) {
              if (a.rank != b.rank) return a.rank > b.rank;
              return a.node < b.node;
            });
  return report;
}

std::span<const NodeScore> top_k(const HarmReport& report, std::size_t k) {
  return std::span<const NodeScore>(report.scores)
      .first(std::min(k, report.scores.size()));
}

BucketDistribution bucket_distribution(std::span<const NodeScore> scores) {
  std::size_t harmful = 0;
  std::size_t very_harmful = 0;
  std::size_t unit = 0;
  for (const NodeScore& score : scores) {
    if (score.rank <= 1.0) {
      ++unit;
    } else if (score.rank <= 2.0) {
      ++harmful;
    } else {
      ++very_harmful;
    }
  }
  BucketDistribution dist;
  dist.unit_rank_count = unit;
  const std::size_t above_unit = harmful + very_harmful;
  if (above_unit > 0) {
    dist.harmful_fraction = static_cast<double>(harmful) / static_cast<double>(above_unit);
    dist.very_harmful_fraction =
        static_cast<double>(very_harmful) / static_cast<double>(above_unit);
  }
  return dist;
}

BucketDistribution bucket_distribution(const HarmReport& report) {
  return bucket_distribution(std::span<const NodeScore>(report.scores));
}

std::string_view to_string(TopKPooling pooling) {
  switch (pooling) {
    case TopKPooling::PoolAcrossTrees: return "pool-across-trees";
    case TopKPooling::PerTreeThenPool: return "per-tree-then-pool";
  }
  return "pool-across-trees";
}

BucketDistribution corpus_bucket_distribution(std::span<const HarmReport> reports,
                                              std::size_t k, TopKPooling pooling) {
  std::vector<NodeScore> pool;
  if (pooling == TopKPooling::PoolAcrossTrees) {
    std::size_t total = 0;
    for (const HarmReport& report : reports) total += report.scores.size();
    pool.reserve(total);
    for (const HarmReport& report : reports) {
      pool.insert(pool.end(), report.scores.begin(), report.scores.end());
    }
    // Stable by rank so equal scores keep corpus order (tree order, then the
    // per-tree index tie-break already applied).
    std::stable_sort(pool.begin(), pool.end(),
                     [](const NodeScore& a, const NodeScore& b) { return a.rank > b.rank; });
    if (pool.size() > k) pool.resize(k);
  } else {
    for (const HarmReport& report : reports) {
      const auto selected = top_k(report, k);
      pool.insert(pool.end(), selected.begin(), selected.end());
    }
  }
  return bucket_distribution(std::span<const NodeScore>(pool));
}

std::string to_json(const HarmReport& report, const PropagationTree& tree, std::size_t k) {
  const auto selected =
      k == 0 ? std::span<const NodeScore>(report.scores) : top_k(report, k);
  std::string out;
  out.reserve(128 + selected.size() * 96);
  out += "{\n  \"strategy\": ";
  append_json_string(out, to_string(report.strategy));
  out += ",\n  \"tree_height\": ";
  out += std::to_string(report.tree_height);
  out += ",\n  \"tree_area\": ";
  out += std::to_string(report.tree_area);
  out += ",\n  \"scores\": [";
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const NodeScore& score = selected[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"node\": ";
    append_json_string(out, tree.graph().node_id(score.node));
    out += ", \"H\": ";
    append_real(out, score.height_term);
    out += ", \"A\": ";
    append_real(out, score.area_term);
    out += ", \"f_t\": ";
    append_real(out, score.timing_term);
    out += ", \"rank\": ";
    append_real(out, score.rank);
    out += "}";
  }
  out += selected.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace treeshield
