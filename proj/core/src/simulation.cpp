#include "treeshield/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <utility>

#include "treeshield/arborescence.hpp"
#include "treeshield/errors.hpp"
#include "treeshield/rng.hpp"

namespace treeshield {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Earliest-arrival times from `source`, never entering nodes marked in
// `is_blocked` (pass an empty vector for no blocking).
std::vector<double> earliest_arrival(const WeightedDigraph& graph, NodeIndex source,
                                     const std::vector<char>& is_blocked) {
  std::vector<double> arrival(graph.node_count(), kInf);
  arrival[source] = 0.0;

  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [t, u] = heap.top();
    heap.pop();
    if (t > arrival[u]) continue;  // stale entry
    for (const Edge& e : graph.out_edges(u)) {
      if (!is_blocked.empty() && is_blocked[e.dst]) continue;
      const double nt = t + e.cost;
      if (nt < arrival[e.dst]) {
        arrival[e.dst] = nt;
        heap.emplace(nt, e.dst);
      }
    }
  }
  return arrival;
}

// A node is reached when content actually arrives (finite time) within the
// horizon; with horizon = +inf every infinite arrival must still count as
// unreached, hence the explicit finiteness test.
bool reaches(double arrival, double horizon) {
  return std::isfinite(arrival) && arrival <= horizon;
}

std::size_t count_within(const std::vector<double>& arrival, double horizon) {
  std::size_t count = 0;
  for (double t : arrival) {
    if (reaches(t, horizon)) ++count;
  }
  return count;
}

std::vector<NodeIndex> all_nodes_except(const WeightedDigraph& graph, NodeIndex skip) {
  std::vector<NodeIndex> nodes;
  nodes.reserve(graph.node_count() > 0 ? graph.node_count() - 1 : 0);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (v != skip) nodes.push_back(v);
  }
  return nodes;
}

}  // namespace

DiffusionOutcome simulate_diffusion(const WeightedDigraph& graph, NodeIndex source,
                                    std::span<const NodeIndex> blocked, double horizon) {
  if (!graph.contains(source)) {
    throw UnknownNodeError("diffusion source index " + std::to_string(source) +
                           " is not a node of the graph");
  }

  DiffusionOutcome outcome;
  outcome.blocked.assign(blocked.begin(), blocked.end());
  std::sort(outcome.blocked.begin(), outcome.blocked.end());
  outcome.blocked.erase(std::unique(outcome.blocked.begin(), outcome.blocked.end()),
                        outcome.blocked.end());

  std::vector<char> is_blocked(graph.node_count(), 0);
  for (NodeIndex v : outcome.blocked) {
    if (!graph.contains(v)) {
      throw UnknownNodeError("blocked index " + std::to_string(v) +
                             " is not a node of the graph");
    }
    if (v == source) {
      throw SourceBlockedError("the diffusion source cannot be blocked");
    }
    is_blocked[v] = 1;
  }

  outcome.arrival = earliest_arrival(graph, source, is_blocked);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (reaches(outcome.arrival[v], horizon)) outcome.reached.push_back(v);
  }

  if (outcome.blocked.empty()) {
    outcome.baseline_reached = outcome.reached.size();
  } else {
    outcome.baseline_reached =
        count_within(earliest_arrival(graph, source, {}), horizon);
  }
  outcome.saved = outcome.baseline_reached - outcome.reached.size();
  return outcome;
}

BlockingPolicy BlockingPolicy::ranked_top_k(std::size_t k, TimingStrategy strategy) {
  BlockingPolicy policy;
  policy.kind = Kind::RankedTopK;
  policy.k = k;
  policy.strategy = strategy;
  return policy;
}

BlockingPolicy BlockingPolicy::random_k(std::size_t k, std::uint64_t seed) {
  BlockingPolicy policy;
  policy.kind = Kind::RandomK;
  policy.k = k;
  policy.seed = seed;
  return policy;
}

BlockingPolicy BlockingPolicy::out_degree_k(std::size_t k) {
  BlockingPolicy policy;
  policy.kind = Kind::OutDegreeK;
  policy.k = k;
  return policy;
}

std::string_view to_string(BlockingPolicy::Kind kind) {
  switch (kind) {
    case BlockingPolicy::Kind::RankedTopK: return "ranked";
    case BlockingPolicy::Kind::RandomK: return "random";
    case BlockingPolicy::Kind::OutDegreeK: return "outdegree";
  }
  return "ranked";
}

std::vector<NodeIndex> select_blocked(const WeightedDigraph& graph, NodeIndex source,
                                      const BlockingPolicy& policy) {
  if (!graph.contains(source)) {
    throw UnknownNodeError("policy source index " + std::to_string(source) +
                           " is not a node of the graph");
  }
  switch (policy.kind) {
    case BlockingPolicy::Kind::RankedTopK: {
      const PropagationTree tree = build_propagation_tree(graph, source);
      const HarmReport report = rank_tree(tree, policy.strategy);
      std::vector<NodeIndex> chosen;
      chosen.reserve(std::min(policy.k, report.scores.size()));
      for (const NodeScore& score : report.scores) {
        if (chosen.size() == policy.k) break;
        if (score.node == source) continue;
        chosen.push_back(score.node);
      }
      return chosen;
    }
    case BlockingPolicy::Kind::RandomK: {
      std::vector<NodeIndex> candidates = all_nodes_except(graph, source);
      std::mt19937_64 gen(policy.seed);
      const std::size_t take = std::min(policy.k, candidates.size());
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + rng::uniform_below(gen, candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
      }
      candidates.resize(take);
      return candidates;
    }
    case BlockingPolicy::Kind::OutDegreeK: {
      std::vector<NodeIndex> candidates = all_nodes_except(graph, source);
      std::stable_sort(candidates.begin(), candidates.end(),
                       [&graph](NodeIndex a, NodeIndex b) {
                         return graph.out_degree(a) > graph.out_degree(b);
                       });
      if (candidates.size() > policy.k) candidates.resize(policy.k);
      return candidates;
    }
  }
  return {};
}

PolicyOutcome evaluate_policy(const WeightedDigraph& graph, NodeIndex source,
                              const BlockingPolicy& policy, double horizon) {
  const std::vector<NodeIndex> blocked = select_blocked(graph, source, policy);
  DiffusionOutcome outcome = simulate_diffusion(graph, source, blocked, horizon);
  PolicyOutcome result;
  result.saved = outcome.saved;
  result.blocked = std::move(outcome.blocked);
  result.reached = outcome.reached.size();
  return result;
}

PolicyComparison compare_policies(const WeightedDigraph& graph, NodeIndex source,
                                  std::span<const std::size_t> k_grid,
                                  std::span<const TimingStrategy> strategies,
                                  double horizon, std::uint64_t seed) {
  std::vector<std::size_t> ks(k_grid.begin(), k_grid.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  PolicyComparison comparison;
  comparison.rows.reserve(ks.size() * (strategies.size() + 2));
  for (std::size_t k : ks) {
    for (TimingStrategy strategy : strategies) {
      const PolicyOutcome outcome =
          evaluate_policy(graph, source, BlockingPolicy::ranked_top_k(k, strategy), horizon);
      comparison.rows.push_back(
          {k, BlockingPolicy::Kind::RankedTopK, strategy, outcome.saved, outcome.reached});
    }
    const PolicyOutcome by_degree =
        evaluate_policy(graph, source, BlockingPolicy::out_degree_k(k), horizon);
    comparison.rows.push_back({k, BlockingPolicy::Kind::OutDegreeK, std::nullopt,
                               by_degree.saved, by_degree.reached});
    const std::uint64_t row_seed =
        rng::splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(k) + 1)));
    const PolicyOutcome random =
        evaluate_policy(graph, source, BlockingPolicy::random_k(k, row_seed), horizon);
    comparison.rows.push_back(
        {k, BlockingPolicy::Kind::RandomK, std::nullopt, random.saved, random.reached});
  }
  return comparison;
}

std::string to_csv(const PolicyComparison& comparison) {
  std::string out = "k,policy,strategy,saved,reached\n";
  for (const PolicyComparisonRow& row : comparison.rows) {
    out += std::to_string(row.k);
    out += ',';
    out += to_string(row.policy);
    out += ',';
    out += row.strategy ? to_string(*row.strategy) : std::string_view("-");
    out += ',';
    out += std::to_string(row.saved);
    out += ',';
    out += std::to_string(row.reached);
    out += '\n';
  }
  return out;
}

}  // namespace treeshield
