#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "dircut/graph.hpp"

namespace dircut {

using ParsedGraph = std::variant<WeightedDigraph, VertexWeightedDigraph>;

// Shared text format. Header `n m directed edge` or `n m directed vertex`;
// vertex mode lists n `vertex weight` lines first; then m `tail head
// [weight]` lines (weight required exactly in edge mode). `#` starts a
// comment; weights are decimals or p/q rationals. Trailing `tau p/q` sidecar
// lines (as emitted by the sparsify subcommand) are tolerated and ignored.
ParsedGraph parse_graph(const std::string& text);

std::string emit_graph(const WeightedDigraph& g);
std::string emit_graph(const VertexWeightedDigraph& g);
std::string emit_graph(const ParsedGraph& g);

// FNV-1a over the canonical emission; stable across platforms.
std::uint64_t graph_digest(const ParsedGraph& g);

// Thrown with a 1-based line number for malformed input.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace dircut
