#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "treeshield/arborescence.hpp"
#include "treeshield/errors.hpp"
#include "treeshield/graph_io.hpp"
#include "treeshield/ranking.hpp"

using namespace treeshield;

namespace {

std::string fixture(const std::string& name) {
  return std::string(TREESHIELD_TEST_DATA) + "/" + name;
}

WeightedDigraph parse_fixture(const std::string& name) {
  std::ifstream in(fixture(name), std::ios::binary);
  REQUIRE(in.good());
  return parse_edge_list(in);
}

// Identity-level view of a graph, independent of dense-index assignment.
std::set<std::tuple<std::string, std::string, double>> edge_set(const WeightedDigraph& g) {
  std::set<std::tuple<std::string, std::string, double>> edges;
  for (const Edge& e : g.edges()) {
    edges.emplace(g.node_id(e.src), g.node_id(e.dst), e.cost);
  }
  return edges;
}

std::set<std::string> id_set(const WeightedDigraph& g) {
  std::set<std::string> ids;
  for (NodeIndex v = 0; v < g.node_count(); ++v) ids.insert(g.node_id(v));
  return ids;
}

template <typename Fn>
ParseError capture_parse_error(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError(ParseErrorKind::MalformedLine, 0, "unreachable");
}

}  // namespace

TEST_CASE("edge list: basic parse") {
  const WeightedDigraph g = parse_edge_list("a b 1.5\nb c 2.0");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  // Dense indices follow first appearance.
  CHECK(g.find_node("a") == NodeIndex{0});
  CHECK(g.find_node("b") == NodeIndex{1});
  CHECK(g.find_node("c") == NodeIndex{2});
  CHECK_FALSE(g.find_node("zz").has_value());
  const auto out = g.out_edges(0);
  REQUIRE(out.size() == 1);
  CHECK(out[0].dst == 1);
  CHECK(out[0].cost == 1.5);
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(2, 1));
}

TEST_CASE("edge list: comments, blank lines, CRLF, no trailing newline") {
  const WeightedDigraph g =
      parse_edge_list("# header\r\n\r\na b 1.5\r\nb c 2.0 # inline\n\n   \nc d 3.25");
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.out_edges(*g.find_node("c"))[0].cost == 3.25);
}

TEST_CASE("edge list: error classes carry kind and line number") {
  ParseError e = capture_parse_error([] { parse_edge_list("a a 1.0"); });
  CHECK(e.kind() == ParseErrorKind::SelfLoop);
  CHECK(e.line() == 1);

  e = capture_parse_error([] { parse_edge_list("a b 1.0\nb c 0"); });
  CHECK(e.kind() == ParseErrorKind::NonPositiveCost);
  CHECK(e.line() == 2);

  e = capture_parse_error([] { parse_edge_list("a b -3.5"); });
  CHECK(e.kind() == ParseErrorKind::NonPositiveCost);

  e = capture_parse_error([] { parse_edge_list("a b nan"); });
  CHECK(e.kind() == ParseErrorKind::NonPositiveCost);

  e = capture_parse_error([] { parse_edge_list("a b inf"); });
  CHECK(e.kind() == ParseErrorKind::NonPositiveCost);

  e = capture_parse_error([] { parse_edge_list("a b 1.0\nb c\n"); });
  CHECK(e.kind() == ParseErrorKind::MalformedLine);
  CHECK(e.line() == 2);

  e = capture_parse_error([] { parse_edge_list("a b 1.0 extra"); });
  CHECK(e.kind() == ParseErrorKind::MalformedLine);

  e = capture_parse_error([] { parse_edge_list("a b notanumber"); });
  CHECK(e.kind() == ParseErrorKind::MalformedLine);

  e = capture_parse_error([] { parse_edge_list("a b 1.0\n# fine\na b 2.0"); });
  CHECK(e.kind() == ParseErrorKind::DuplicateEdge);
  CHECK(e.line() == 3);
}

TEST_CASE("edge list: parse is deterministic") {
  const std::string text = "r a 5.0\nr b 1.0\nb a 1.0\na c 1.0\n";
  const WeightedDigraph g1 = parse_edge_list(text);
  const WeightedDigraph g2 = parse_edge_list(text);
  REQUIRE(g1.node_count() == g2.node_count());
  for (NodeIndex v = 0; v < g1.node_count(); ++v) {
    CHECK(g1.node_id(v) == g2.node_id(v));
  }
  CHECK(export_edge_list(g1) == export_edge_list(g2));
}

TEST_CASE("twitter15: basic trace") {
  const TraceGraph trace =
      parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0]\n"
                            "['u1', 't1', 0.0]->['u2', 't2', 3.5]");
  CHECK(trace.graph.node_count() == 2);
  CHECK(trace.graph.edge_count() == 1);
  CHECK(trace.graph.node_id(trace.root) == "u1:t1");
  const Edge e = trace.graph.edges()[0];
  CHECK(trace.graph.node_id(e.src) == "u1:t1");
  CHECK(trace.graph.node_id(e.dst) == "u2:t2");
  CHECK(e.cost == 3.5);
}

TEST_CASE("twitter15: optional whitespace and composite identity") {
  // No space after commas, spaces around ->, same uid under two tweets.
  const TraceGraph trace =
      parse_twitter15_trace("['ROOT','ROOT',0.0] -> ['u1','t1',0.0]\n"
                            "['u1','t1',0.0]->['u1','t2',2.0]\n"
                            "[ 'u1' , 't2' , 2.0 ]->[ 'u2' , 't3' , 2.5 ]\n");
  CHECK(trace.graph.node_count() == 3);
  CHECK(trace.graph.find_node("u1:t1").has_value());
  CHECK(trace.graph.find_node("u1:t2").has_value());
  CHECK(trace.graph.out_edges(*trace.graph.find_node("u1:t2"))[0].cost == 0.5);
}

TEST_CASE("twitter15: error classes carry kind and line number") {
  ParseError e = capture_parse_error([] {
    parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0]\n"
                          "['u1', 't1', 5.0]->['u2', 't2', 1.0]");
  });
  CHECK(e.kind() == ParseErrorKind::NegativeLatency);
  CHECK(e.line() == 2);

  // Zero latency would make a zero-cost edge.
  e = capture_parse_error([] {
    parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 2.0]\n"
                          "['u1', 't1', 2.0]->['u2', 't2', 2.0]");
  });
  CHECK(e.kind() == ParseErrorKind::NonPositiveCost);
  CHECK(e.line() == 2);

  e = capture_parse_error([] { parse_twitter15_trace("['u1', 't1', 0.0]->['u2', 't2', 1.0]"); });
  CHECK(e.kind() == ParseErrorKind::MissingRoot);
  CHECK(e.line() == 0);

  // Unterminated triple.
  e = capture_parse_error([] {
    parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0]\n"
                          "['u1', 't1', 0.0->['u2', 't2', 3.5]");
  });
  CHECK(e.kind() == ParseErrorKind::MalformedTriple);
  CHECK(e.line() == 2);

  // Double quotes instead of single quotes.
  e = capture_parse_error([] { parse_twitter15_trace("[\"ROOT\", \"ROOT\", 0.0]->[\"u1\", \"t1\", 0.0]"); });
  CHECK(e.kind() == ParseErrorKind::MalformedTriple);
  CHECK(e.line() == 1);

  // Negative timestamp.
  e = capture_parse_error([] { parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', -1.0]"); });
  CHECK(e.kind() == ParseErrorKind::MalformedTriple);

  // Trailing garbage after the child triple.
  e = capture_parse_error([] { parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0] junk"); });
  CHECK(e.kind() == ParseErrorKind::MalformedTriple);

  // Missing arrow.
  e = capture_parse_error([] { parse_twitter15_trace("['ROOT', 'ROOT', 0.0] ['u1', 't1', 0.0]"); });
  CHECK(e.kind() == ParseErrorKind::MalformedTriple);

  // A second ROOT declaration.
  e = capture_parse_error([] {
    parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0]\n"
                          "['ROOT', 'ROOT', 0.0]->['u9', 't9', 0.0]");
  });
  CHECK(e.kind() == ParseErrorKind::MalformedTriple);
  CHECK(e.line() == 2);

  // Self loop and duplicate edge surface like in the edge-list parser.
  e = capture_parse_error([] {
    parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0]\n"
                          "['u1', 't1', 0.0]->['u1', 't1', 1.0]");
  });
  CHECK(e.kind() == ParseErrorKind::SelfLoop);

  e = capture_parse_error([] {
    parse_twitter15_trace("['ROOT', 'ROOT', 0.0]->['u1', 't1', 0.0]\n"
                          "['u1', 't1', 0.0]->['u2', 't2', 1.0]\n"
                          "['u1', 't1', 0.5]->['u2', 't2', 2.0]");
  });
  CHECK(e.kind() == ParseErrorKind::DuplicateEdge);
  CHECK(e.line() == 3);
}

TEST_CASE("twitter15: fixture files parse") {
  std::ifstream in(fixture("sample.trace"), std::ios::binary);
  REQUIRE(in.good());
  const TraceGraph trace = parse_twitter15_trace(in);
  CHECK(trace.graph.node_count() == 4);
  CHECK(trace.graph.edge_count() == 3);
  CHECK(trace.graph.node_id(trace.root) == "u1:t1");

  for (const char* name : {"bad_negative_latency.trace", "bad_missing_root.trace",
                           "bad_triple.trace"}) {
    std::ifstream bad(fixture(name), std::ios::binary);
    REQUIRE(bad.good());
    CHECK_THROWS_AS(parse_twitter15_trace(bad), ParseError);
  }
}

TEST_CASE("format_cost: shortest form that reads back exactly") {
  CHECK(format_cost(1.0) == "1.0");
  CHECK(format_cost(3.5) == "3.5");
  CHECK(format_cost(0.1) == "0.1");
  CHECK(format_cost(10.0) == "10.0");
  CHECK(format_cost(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_cost(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(format_cost(5.000000001)) == 5.000000001);
}

TEST_CASE("round-trip: export then re-parse is isomorphic, all fixtures") {
  for (const char* name : {"chain.edges", "small.edges", "crlf.edges", "comments.edges"}) {
    CAPTURE(name);
    const WeightedDigraph g = parse_fixture(name);
    const WeightedDigraph reparsed = parse_edge_list(export_edge_list(g));
    CHECK(id_set(g) == id_set(reparsed));
    CHECK(edge_set(g) == edge_set(reparsed));
  }
}

TEST_CASE("tree export: dist column, header comments, re-parseable") {
  const WeightedDigraph g = parse_fixture("chain.edges");
  const PropagationTree tree = build_propagation_tree(g, *g.find_node("r"));
  const std::string text = export_tree_edge_list(tree);
  CHECK(text ==
        "# propagation tree rooted at r\n"
        "# parent child cost # dist=<cumulative cost from root>\n"
        "r a 1.0 # dist=1.0\n"
        "a b 1.0 # dist=2.0\n");
  // The trailing dist comment keeps the output a valid edge list.
  const WeightedDigraph reparsed = parse_edge_list(text);
  CHECK(edge_set(reparsed) ==
        std::set<std::tuple<std::string, std::string, double>>{
            {"r", "a", 1.0}, {"a", "b", 1.0}});
}

TEST_CASE("dot export: labels, determinism, single node") {
  const WeightedDigraph g = parse_edge_list("r a 1.0");
  const PropagationTree tree = build_propagation_tree(g, 0);
  const HarmReport report = rank_tree(tree, TimingStrategy::Average);
  const std::string dot = export_dot(tree, report);
  CHECK(dot.find("\"r\" -> \"a\" [label=\"1.0\"]") != std::string::npos);
  CHECK(dot.find("\"r\" [label=\"r\\nrank=2.5000\"];") != std::string::npos);
  CHECK(dot.find("\"a\" [label=\"a\\nrank=1.0000\"];") != std::string::npos);
  CHECK(dot == export_dot(tree, report));

  const WeightedDigraph lone = parse_edge_list("s t 1.0\n");
  const PropagationTree leaf_only = build_propagation_tree(lone, *lone.find_node("t"));
  const std::string single = export_dot(leaf_only, rank_tree(leaf_only, TimingStrategy::Ratio));
  CHECK(single ==
        "digraph propagation {\n"
        "  \"t\" [label=\"t\\nrank=1.0000\"];\n"
        "}\n");
}
