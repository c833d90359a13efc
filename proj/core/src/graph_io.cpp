#include "treeshield/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <utility>

#include "treeshield/errors.hpp"

namespace treeshield {

namespace {

std::string describe(ParseErrorKind kind, std::size_t line, const std::string& detail) {
  std::string msg(to_string(kind));
  if (line > 0) {
    msg += " at line ";
    msg += std::to_string(line);
  }
  msg += ": ";
  msg += detail;
  return msg;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

// Parses a complete double out of `text` (no leading sign juggling, no
// partial consumption).
bool parse_number(std::string_view text, double& value) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  return result.ec == std::errc{} && result.ptr == end;
}

void check_edge(WeightedDigraph::Builder& builder, std::string_view src,
                std::string_view dst, double cost, std::size_t line_no,
                std::string_view cost_text) {
  if (!std::isfinite(cost) || cost <= 0.0) {
    throw ParseError(ParseErrorKind::NonPositiveCost, line_no,
                     "edge cost must be a finite positive number, got `" +
                         std::string(cost_text) + "`");
  }
  if (src == dst) {
    throw ParseError(ParseErrorKind::SelfLoop, line_no,
                     "`" + std::string(src) + "` points at itself");
  }
  const NodeIndex u = builder.intern_node(src);
  const NodeIndex v = builder.intern_node(dst);
  if (builder.has_edge(u, v)) {
    throw ParseError(ParseErrorKind::DuplicateEdge, line_no,
                     "edge `" + std::string(src) + "` -> `" + std::string(dst) +
                         "` appears twice");
  }
  builder.add_edge(u, v, cost);
}

// -- Twitter15 trace grammar ------------------------------------------------

struct Triple {
  std::string uid;
  std::string tweet;
  double time = 0.0;
};

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line_no) : text_(text), line_no_(line_no) {}

  void skip_spaces() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_end() const { return pos_ == text_.size(); }

  void expect(char c, const char* what) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(what);
    ++pos_;
  }

  bool try_eat(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  std::string quoted_token(const char* what) {
    expect('\'', what);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
    if (pos_ == text_.size()) fail(what);
    std::string token(text_.substr(start, pos_ - start));
    ++pos_;  // closing quote
    return token;
  }

  double number(const char* what) {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr == begin) fail(what);
    pos_ = static_cast<std::size_t>(result.ptr - text_.data());
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseErrorKind::MalformedTriple, line_no_,
                     "expected " + what + " at column " + std::to_string(pos_ + 1));
  }

 private:
  std::string_view text_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

Triple parse_triple(LineCursor& cursor) {
  Triple triple;
  cursor.skip_spaces();
  cursor.expect('[', "`[` opening a triple");
  cursor.skip_spaces();
  triple.uid = cursor.quoted_token("a single-quoted uid");
  cursor.skip_spaces();
  cursor.expect(',', "`,` after the uid");
  cursor.skip_spaces();
  triple.tweet = cursor.quoted_token("a single-quoted tweet id");
  cursor.skip_spaces();
  cursor.expect(',', "`,` after the tweet id");
  cursor.skip_spaces();
  triple.time = cursor.number("a timestamp");
  cursor.skip_spaces();
  cursor.expect(']', "`]` closing the triple");
  if (!std::isfinite(triple.time) || triple.time < 0.0) {
    cursor.fail("a non-negative finite timestamp");
  }
  return triple;
}

std::string composite_id(const Triple& triple) { return triple.uid + ":" + triple.tweet; }

void strip_line(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF input
}

}  // namespace

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedLine: return "malformed line";
    case ParseErrorKind::NonPositiveCost: return "non-positive cost";
    case ParseErrorKind::SelfLoop: return "self loop";
    case ParseErrorKind::DuplicateEdge: return "duplicate edge";
    case ParseErrorKind::MalformedTriple: return "malformed triple";
    case ParseErrorKind::NegativeLatency: return "negative latency";
    case ParseErrorKind::MissingRoot: return "missing root";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(describe(kind, line, detail)), kind_(kind), line_(line) {}

WeightedDigraph parse_edge_list(std::istream& in) {
  WeightedDigraph::Builder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_line(line);
    std::string_view view = line;
    if (const std::size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    const auto fields = split_fields(view);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw ParseError(ParseErrorKind::MalformedLine, line_no,
                       "expected `src dst cost`, got " + std::to_string(fields.size()) +
                           " field(s)");
    }
    double cost = 0.0;
    if (!parse_number(fields[2], cost)) {
      throw ParseError(ParseErrorKind::MalformedLine, line_no,
                       "cost `" + std::string(fields[2]) + "` is not a number");
    }
    check_edge(builder, fields[0], fields[1], cost, line_no, fields[2]);
  }
  return std::move(builder).build();
}

WeightedDigraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

TraceGraph parse_twitter15_trace(std::istream& in) {
  WeightedDigraph::Builder builder;
  std::string root_id;
  bool root_declared = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_line(line);
    const std::string_view view = line;
    if (split_fields(view).empty()) continue;  // blank line

    LineCursor cursor(view, line_no);
    const Triple parent = parse_triple(cursor);
    cursor.skip_spaces();
    if (!cursor.try_eat("->")) cursor.fail("`->` between the two triples");
    const Triple child = parse_triple(cursor);
    cursor.skip_spaces();
    if (!cursor.at_end()) cursor.fail("end of line after the child triple");

    if (parent.uid == "ROOT") {
      if (root_declared) {
        throw ParseError(ParseErrorKind::MalformedTriple, line_no,
                         "second ROOT declaration (the root is already `" + root_id + "`)");
      }
      root_id = composite_id(child);
      builder.intern_node(root_id);
      root_declared = true;
      continue;
    }

    const std::string parent_id = composite_id(parent);
    const std::string child_id = composite_id(child);
    if (child.time < parent.time) {
      throw ParseError(ParseErrorKind::NegativeLatency, line_no,
                       "child at t=" + format_cost(child.time) + " precedes parent at t=" +
                           format_cost(parent.time));
    }
    check_edge(builder, parent_id, child_id, child.time - parent.time, line_no,
               format_cost(child.time - parent.time));
  }

  if (!root_declared) {
    throw ParseError(ParseErrorKind::MissingRoot, 0,
                     "trace ended without a ROOT declaration");
  }

  TraceGraph trace;
  trace.graph = std::move(builder).build();
  trace.root = *trace.graph.find_node(root_id);
  return trace;
}

TraceGraph parse_twitter15_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_twitter15_trace(in);
}

std::string format_cost(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, result.ptr);
  if (text.find_first_of(".eEnN") == std::string::npos) text += ".0";
  return text;
}

std::string export_edge_list(const WeightedDigraph& graph) {
  std::string out;
  out.reserve(graph.edge_count() * 16);
  for (const Edge& e : graph.edges()) {
    out += graph.node_id(e.src);
    out += ' ';
    out += graph.node_id(e.dst);
    out += ' ';
    out += format_cost(e.cost);
    out += '\n';
  }
  return out;
}

std::string export_tree_edge_list(const PropagationTree& tree) {
  const WeightedDigraph& graph = tree.graph();
  std::string out = "# propagation tree rooted at " + graph.node_id(tree.root()) + "\n";
  out += "# parent child cost # dist=<cumulative cost from root>\n";
  for (NodeIndex v : tree.top_down_order()) {
    if (v == tree.root()) continue;
    out += graph.node_id(tree.parent(v));
    out += ' ';
    out += graph.node_id(v);
    out += ' ';
    out += format_cost(tree.parent_cost(v));
    out += " # dist=";
    out += format_cost(tree.distance(v));
    out += '\n';
  }
  return out;
}

namespace {

std::string dot_escape(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const PropagationTree& tree, const HarmReport& report) {
  const WeightedDigraph& graph = tree.graph();
  std::vector<double> rank_of(graph.node_count(), 0.0);
  for (const NodeScore& score : report.scores) rank_of[score.node] = score.rank;

  std::string out = "digraph propagation {\n";
  char rank_text[32];
  for (NodeIndex v : tree.members()) {
    const std::string id = dot_escape(graph.node_id(v));
    std::snprintf(rank_text, sizeof rank_text, "%.4f", rank_of[v]);
    out += "  \"" + id + "\" [label=\"" + id + "\\nrank=" + rank_text + "\"];\n";
  }
  for (NodeIndex v : tree.members()) {
    if (v == tree.root()) continue;
    out += "  \"" + dot_escape(graph.node_id(tree.parent(v))) + "\" -> \"" +
           dot_escape(graph.node_id(v)) + "\" [label=\"" + format_cost(tree.parent_cost(v)) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace treeshield
