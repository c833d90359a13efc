// treeshield: build propagation trees from social-graph snapshots, rank how
// harmful each node is to the spread, and measure how much blocking the top
// ranked nodes actually saves.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treeshield/arborescence.hpp"
#include "treeshield/errors.hpp"
#include "treeshield/graph.hpp"
#include "treeshield/graph_io.hpp"
#include "treeshield/random_graph.hpp"
#include "treeshield/ranking.hpp"
#include "treeshield/rng.hpp"
#include "treeshield/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

struct LoadedGraph {
  treeshield::WeightedDigraph graph;
  std::optional<treeshield::NodeIndex> trace_root;
};

LoadedGraph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open input file `" + path + "`");
  }
  LoadedGraph loaded;
  if (format == "twitter15") {
    treeshield::TraceGraph trace = treeshield::parse_twitter15_trace(in);
    loaded.graph = std::move(trace.graph);
    loaded.trace_root = trace.root;
  } else {
    loaded.graph = treeshield::parse_edge_list(in);
  }
  return loaded;
}

treeshield::NodeIndex resolve_root(const LoadedGraph& loaded, const std::string& root_flag) {
  if (!root_flag.empty()) {
    const auto index = loaded.graph.find_node(root_flag);
    if (!index) {
      throw treeshield::UnknownNodeError("root id `" + root_flag +
                                         "` is not a node of the graph");
    }
    return *index;
  }
  if (loaded.trace_root) return *loaded.trace_root;
  throw treeshield::UnknownNodeError(
      "no root: pass --root (edge-list input declares no root itself)");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!std::cout.good()) throw std::ios_base::failure("writing to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file `" + path + "`");
  out << content;
  out.flush();
  if (!out.good()) throw std::ios_base::failure("writing `" + path + "` failed");
}

treeshield::TimingStrategy strategy_or_die(const std::string& name) {
  const auto strategy = treeshield::timing_strategy_from_name(name);
  if (!strategy) {
    // Unreachable behind CLI11's IsMember validator; belt and braces.
    throw std::invalid_argument("unknown strategy `" + name + "`");
  }
  return *strategy;
}

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const treeshield::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const treeshield::UnknownNodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const treeshield::SourceBlockedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

struct BenchSize {
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

std::vector<BenchSize> parse_sizes(const std::vector<std::string>& specs) {
  std::vector<BenchSize> sizes;
  for (const std::string& spec : specs) {
    const std::size_t x = spec.find('x');
    BenchSize size;
    try {
      if (x == std::string::npos) throw std::invalid_argument(spec);
      std::size_t used_nodes = 0;
      std::size_t used_edges = 0;
      size.nodes = std::stoull(spec.substr(0, x), &used_nodes);
      size.edges = std::stoull(spec.substr(x + 1), &used_edges);
      if (used_nodes != x || used_edges != spec.size() - x - 1) {
        throw std::invalid_argument(spec);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --sizes entry `" + spec +
                                  "`: expected <nodes>x<edges>, e.g. 978x10217");
    }
    sizes.push_back(size);
  }
  return sizes;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "treeshield: propagation-tree construction, harm ranking, and blocking-policy "
      "evaluation for weighted directed social graphs"};
  app.require_subcommand(1);

  std::string input_path;
  std::string input_format = "edge-list";
  std::string root_flag;
  std::string strategy_name = "average";
  std::string out_path;

  const auto add_input_options = [&](CLI::App* sub) {
    sub->add_option("--input", input_path, "input graph file")->required();
    sub->add_option("--format", input_format, "input format")
        ->check(CLI::IsMember({"edge-list", "twitter15"}))
        ->capture_default_str();
    sub->add_option("--root", root_flag,
                    "root node id (required for edge-list input; overrides the "
                    "declared root of a twitter15 trace)");
    sub->add_option("--out", out_path, "output file (default: stdout)");
  };

  // build-tree
  CLI::App* build_cmd =
      app.add_subcommand("build-tree", "build the propagation tree rooted at the source");
  std::string out_format = "edge-list";
  add_input_options(build_cmd);
  build_cmd->add_option("--strategy", strategy_name, "timing strategy for DOT rank labels")
      ->check(CLI::IsMember({"average", "median", "ratio"}))
      ->capture_default_str();
  build_cmd->add_option("--out-format", out_format, "tree serialization")
      ->check(CLI::IsMember({"edge-list", "dot"}))
      ->capture_default_str();

  // rank
  CLI::App* rank_cmd =
      app.add_subcommand("rank", "rank tree nodes by harmfulness (blocking order)");
  std::size_t top = 0;
  add_input_options(rank_cmd);
  rank_cmd->add_option("--strategy", strategy_name, "timing strategy")
      ->check(CLI::IsMember({"average", "median", "ratio"}))
      ->required();
  rank_cmd->add_option("--k", top, "keep only the top k entries (0 = all)");

  // simulate
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "compare blocking policies (ranked / out-degree / random) on a k grid");
  std::vector<std::size_t> k_grid{5, 10, 15, 20};
  double horizon = treeshield::kNoHorizon;
  std::uint64_t seed = 0;
  std::string sim_strategy = "all";
  add_input_options(sim_cmd);
  sim_cmd->add_option("--strategy", sim_strategy,
                      "timing strategy for the ranked policy, or `all`")
      ->check(CLI::IsMember({"average", "median", "ratio", "all"}))
      ->capture_default_str();
  sim_cmd->add_option("--k", k_grid, "comma-separated k grid")
      ->delimiter(',')
      ->capture_default_str();
  sim_cmd->add_option("--horizon", horizon,
                      "observation horizon (arrival times above it do not count)");
  sim_cmd->add_option("--seed", seed, "seed for the random policy")->capture_default_str();

  // bench
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "time tree construction and ranking on seeded synthetic graphs");
  std::vector<std::string> size_specs{"978x10217", "5210x49124", "10210x89124"};
  std::uint64_t bench_seed = 42;
  std::string bench_out;
  bench_cmd->add_option("--sizes", size_specs, "comma-separated <nodes>x<edges> list")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "graph generation seed")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (build_cmd->parsed()) {
    return run_guarded([&] {
      const LoadedGraph loaded = load_graph(input_path, input_format);
      const treeshield::NodeIndex root = resolve_root(loaded, root_flag);
      const treeshield::PropagationTree tree =
          treeshield::build_propagation_tree(loaded.graph, root);
      if (out_format == "dot") {
        const treeshield::HarmReport report =
            treeshield::rank_tree(tree, strategy_or_die(strategy_name));
        write_output(out_path, treeshield::export_dot(tree, report));
      } else {
        write_output(out_path, treeshield::export_tree_edge_list(tree));
      }
    });
  }

  if (rank_cmd->parsed()) {
    return run_guarded([&] {
      const LoadedGraph loaded = load_graph(input_path, input_format);
      const treeshield::NodeIndex root = resolve_root(loaded, root_flag);
      const treeshield::PropagationTree tree =
          treeshield::build_propagation_tree(loaded.graph, root);
      const treeshield::HarmReport report =
          treeshield::rank_tree(tree, strategy_or_die(strategy_name));
      write_output(out_path, treeshield::to_json(report, tree, top));
    });
  }

  if (sim_cmd->parsed()) {
    return run_guarded([&] {
      if (k_grid.empty()) throw std::invalid_argument("--k grid must be nonempty");
      const LoadedGraph loaded = load_graph(input_path, input_format);
      const treeshield::NodeIndex source = resolve_root(loaded, root_flag);
      std::vector<treeshield::TimingStrategy> strategies;
      if (sim_strategy == "all") {
        strategies.assign(treeshield::kAllStrategies.begin(),
                          treeshield::kAllStrategies.end());
      } else {
        strategies.push_back(strategy_or_die(sim_strategy));
      }
      const treeshield::PolicyComparison comparison = treeshield::compare_policies(
          loaded.graph, source, k_grid, strategies, horizon, seed);
      write_output(out_path, treeshield::to_csv(comparison));
    });
  }

  // bench
  return run_guarded([&] {
    const std::vector<BenchSize> sizes = parse_sizes(size_specs);
    std::string csv = "nodes,edges,build_seconds,rank_seconds\n";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const BenchSize& size = sizes[i];
      const treeshield::WeightedDigraph graph = treeshield::random_digraph(
          size.nodes, size.edges, treeshield::rng::splitmix64(bench_seed + i));

      const auto build_start = std::chrono::steady_clock::now();
      const treeshield::PropagationTree tree = treeshield::build_propagation_tree(graph, 0);
      const double build_seconds = seconds_since(build_start);

      const auto rank_start = std::chrono::steady_clock::now();
      const treeshield::HarmReport report =
          treeshield::rank_tree(tree, treeshield::TimingStrategy::Average);
      const double rank_seconds = seconds_since(rank_start);

      char row[128];
      std::snprintf(row, sizeof row, "%zu,%zu,%.6f,%.6f\n", size.nodes, size.edges,
                    build_seconds, rank_seconds);
      csv += row;
      static_cast<void>(report);
    }
    write_output(bench_out, csv);
  });
}
