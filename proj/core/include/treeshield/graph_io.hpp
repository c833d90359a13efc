#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "treeshield/arborescence.hpp"
#include "treeshield/graph.hpp"
#include "treeshield/ranking.hpp"

namespace treeshield {

// Reads the plain edge-list format: one `src dst cost` triple per line,
// whitespace-separated; `#` starts a comment; blank lines are skipped; LF
// and CRLF both accepted. Dense indices follow first appearance. Throws
// ParseError (MalformedLine, NonPositiveCost, SelfLoop, DuplicateEdge) with
// the offending 1-based line number.
WeightedDigraph parse_edge_list(std::istream& in);
WeightedDigraph parse_edge_list(std::string_view text);

// A parsed propagation trace: the graph plus the root declared by the
// trace's ROOT line.
struct TraceGraph {
  WeightedDigraph graph;
  NodeIndex root = kInvalidNode;
};

// Reads the Twitter15 trace format: one
//   ['<uid>', '<tweet_id>', <time>]->['<uid>', '<tweet_id>', <time>]
// per line. Single quotes are required; whitespace after commas (and around
// `->`) is optional. A line whose parent uid is the literal ROOT declares
// the root node (its child triple) and contributes no edge; exactly one
// such line must appear. Node identity is the (uid, tweet_id) pair, written
// as `uid:tweet_id`. Edge cost is child time minus parent time. Throws
// ParseError: MalformedTriple (bad syntax, negative or non-finite times,
// repeated ROOT), NegativeLatency (child before parent), NonPositiveCost
// (zero latency), SelfLoop, DuplicateEdge, MissingRoot (stream ended with
// no ROOT line; reported at line 0).
TraceGraph parse_twitter15_trace(std::istream& in);
TraceGraph parse_twitter15_trace(std::string_view text);

// Shortest decimal form that parses back to exactly `value`, always marked
// as a real (an integral value gains a trailing `.0`).
std::string format_cost(double value);

// One `src dst cost` line per edge, in dense-index-then-insertion order.
// Re-parsing the result reproduces the same ids, edges, and costs (isolated
// nodes, having no incident edges, are not representable).
std::string export_edge_list(const WeightedDigraph& graph);

// Tree as an edge list, one `parent child cost # dist=<d>` line per member
// in ascending dense-index order, where <d> is the child's cumulative cost
// from the root. The trailing comment keeps the file a valid edge list.
std::string export_tree_edge_list(const PropagationTree& tree);

// Graphviz DOT rendering: every member as a node statement labeled with its
// id and rank (4 decimals), then every tree edge labeled with its cost.
// Output is deterministic, so equal inputs give byte-identical bytes.
// The report must come from the same tree.
std::string export_dot(const PropagationTree& tree, const HarmReport& report);

}  // namespace treeshield
