#include "dircut/graph_io.hpp"

#include <sstream>
#include <vector>

namespace dircut {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    number++;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::int64_t parse_id(const Line& line, const std::string& tok,
                      const char* what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size() || v < 0) throw std::invalid_argument("bad");
    return v;
  } catch (...) {
    throw ParseError(line.number, std::string("bad ") + what + ": " + tok);
  }
}

Rational parse_weight(const Line& line, const std::string& tok) {
  try {
    return Rational::parse(tok);
  } catch (const std::exception& e) {
    throw ParseError(line.number, std::string("bad weight: ") + e.what());
  }
}

}  // namespace

ParsedGraph parse_graph(const std::string& text) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input");

  const Line& header = lines[0];
  if (header.tokens.size() != 4 || header.tokens[2] != "directed" ||
      (header.tokens[3] != "edge" && header.tokens[3] != "vertex"))
    throw ParseError(header.number,
                     "expected header `n m directed edge|vertex`");
  std::int64_t n = parse_id(header, header.tokens[0], "vertex count");
  std::int64_t m = parse_id(header, header.tokens[1], "edge count");
  bool vertex_mode = header.tokens[3] == "vertex";
  if (n <= 0) throw ParseError(header.number, "vertex count must be positive");

  std::size_t idx = 1;
  std::vector<Rational> weights;
  if (vertex_mode) {
    weights.assign(n, Rational(0));
    std::vector<bool> seen(n, false);
    for (std::int64_t i = 0; i < n; ++i, ++idx) {
      if (idx >= lines.size())
        throw ParseError(lines.back().number + 1,
                         "missing vertex weight lines");
      const Line& line = lines[idx];
      if (line.tokens.size() != 2)
        throw ParseError(line.number, "expected `vertex weight`");
      std::int64_t v = parse_id(line, line.tokens[0], "vertex id");
      if (v >= n) throw ParseError(line.number, "vertex id out of range");
      if (seen[v])
        throw ParseError(line.number, "duplicate vertex-weight line");
      seen[v] = true;
      weights[v] = parse_weight(line, line.tokens[1]);
    }
  }

  std::vector<Edge> edges;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (std::int64_t i = 0; i < m; ++i, ++idx) {
    if (idx >= lines.size())
      throw ParseError(lines.back().number + 1, "missing edge lines");
    const Line& line = lines[idx];
    std::size_t expected = vertex_mode ? 2 : 3;
    if (line.tokens.size() != expected)
      throw ParseError(line.number, vertex_mode
                                        ? "expected `tail head`"
                                        : "expected `tail head weight`");
    std::int64_t t = parse_id(line, line.tokens[0], "tail");
    std::int64_t h = parse_id(line, line.tokens[1], "head");
    if (t >= n || h >= n)
      throw ParseError(line.number, "edge endpoint out of range");
    if (vertex_mode) {
      pairs.push_back({static_cast<VertexId>(t), static_cast<VertexId>(h)});
    } else {
      edges.push_back({static_cast<VertexId>(t), static_cast<VertexId>(h),
                       parse_weight(line, line.tokens[2])});
    }
  }
  for (; idx < lines.size(); ++idx)
    if (lines[idx].tokens[0] != "tau")
      throw ParseError(lines[idx].number, "unexpected trailing line");

  try {
    if (vertex_mode)
      return VertexWeightedDigraph::build(static_cast<VertexId>(n), pairs,
                                          weights);
    return WeightedDigraph::build(static_cast<VertexId>(n), edges);
  } catch (const std::exception& e) {
    throw ParseError(header.number, e.what());
  }
}

std::string emit_graph(const WeightedDigraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << " directed edge\n";
  for (const Edge& e : g.edges())
    out << e.tail << ' ' << e.head << ' ' << e.weight.str() << '\n';
  return out.str();
}

std::string emit_graph(const VertexWeightedDigraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << " directed vertex\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << v << ' ' << g.weight(v).str() << '\n';
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    out << g.edge_tail(e) << ' ' << g.edge_head(e) << '\n';
  return out.str();
}

std::string emit_graph(const ParsedGraph& g) {
  return std::visit([](const auto& graph) { return emit_graph(graph); }, g);
}

std::uint64_t graph_digest(const ParsedGraph& g) {
  std::string text = emit_graph(g);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dircut
