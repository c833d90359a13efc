// Microbenchmarks over the three synthetic graph shapes used by the
// scalability suite (small / medium / large social-graph snapshots).

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <utility>

#include "treeshield/arborescence.hpp"
#include "treeshield/random_graph.hpp"
#include "treeshield/ranking.hpp"
#include "treeshield/simulation.hpp"

namespace {

constexpr std::uint64_t kSeed = 42;

const treeshield::WeightedDigraph& cached_graph(std::size_t nodes, std::size_t edges) {
  static std::map<std::pair<std::size_t, std::size_t>, treeshield::WeightedDigraph> cache;
  auto [it, inserted] = cache.try_emplace({nodes, edges});
  if (inserted) it->second = treeshield::random_digraph(nodes, edges, kSeed);
  return it->second;
}

void BM_BuildTree(benchmark::State& state) {
  const auto& graph = cached_graph(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(treeshield::build_propagation_tree(graph, 0));
  }
}

void BM_ShortestPathOracle(benchmark::State& state) {
  const auto& graph = cached_graph(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(treeshield::shortest_path_oracle(graph, 0));
  }
}

void BM_RankTree(benchmark::State& state) {
  const auto& graph = cached_graph(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)));
  const treeshield::PropagationTree tree = treeshield::build_propagation_tree(graph, 0);
  const auto strategy = static_cast<treeshield::TimingStrategy>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(treeshield::rank_tree(tree, strategy));
  }
}

void BM_SimulateDiffusion(benchmark::State& state) {
  const auto& graph = cached_graph(static_cast<std::size_t>(state.range(0)),
                                   static_cast<std::size_t>(state.range(1)));
  const treeshield::BlockingPolicy policy =
      treeshield::BlockingPolicy::ranked_top_k(20, treeshield::TimingStrategy::Average);
  const std::vector<treeshield::NodeIndex> blocked =
      treeshield::select_blocked(graph, 0, policy);
  for (auto _ : state) {
    benchmark::DoNotOptimize(treeshield::simulate_diffusion(graph, 0, blocked));
  }
}

void graph_shapes(benchmark::internal::Benchmark* bench) {
  bench->Args({978, 10217})->Args({5210, 49124})->Args({10210, 89124});
  bench->Unit(benchmark::kMillisecond);
}

void graph_shapes_with_strategies(benchmark::internal::Benchmark* bench) {
  for (auto shape : {std::pair<long, long>{978, 10217},
                     std::pair<long, long>{5210, 49124},
                     std::pair<long, long>{10210, 89124}}) {
    for (long strategy = 0; strategy < 3; ++strategy) {
      bench->Args({shape.first, shape.second, strategy});
    }
  }
  bench->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_BuildTree)->Apply(graph_shapes);
BENCHMARK(BM_ShortestPathOracle)->Apply(graph_shapes);
BENCHMARK(BM_RankTree)->Apply(graph_shapes_with_strategies);
BENCHMARK(BM_SimulateDiffusion)->Apply(graph_shapes);

}  // namespace

BENCHMARK_MAIN();
