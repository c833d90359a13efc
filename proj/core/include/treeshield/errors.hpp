#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treeshield {

/// Classification of input rejections raised while reading graph or trace
/// streams. Every kind except MissingRoot is tied to a specific line.
enum class ParseErrorKind {
  MalformedLine,    // edge list line does not match `src dst cost`
  NonPositiveCost,  // edge cost (or derived latency) is not > 0
  SelfLoop,         // src == dst
  DuplicateEdge,    // a (src, dst) pair appears twice
  MalformedTriple,  // trace line does not match ['uid', 'tweet', time]->[...]
  NegativeLatency,  // child timestamp precedes parent timestamp
  MissingRoot,      // trace stream ended without a ROOT declaration
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  /// `line` is 1-based; 0 means the error concerns the whole stream.
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// A node id (root, source, or query node) that does not exist in the graph
/// or tree it was looked up in.
class UnknownNodeError : public std::runtime_error {
 public:
  explicit UnknownNodeError(const std::string& what) : std::runtime_error(what) {}
};

/// The diffusion source was included in the blocked set.
class SourceBlockedError : public std::runtime_error {
 public:
  explicit SourceBlockedError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation that requires a nonempty value list received an empty one.
class EmptyListError : public std::logic_error {
 public:
  explicit EmptyListError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace treeshield
