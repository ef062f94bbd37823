#include "dircut/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dircut {

namespace {

void check_vertex(VertexId v, VertexId n, const char* what) {
  if (v < 0 || v >= n)
    throw std::out_of_range(std::string(what) + " id " + std::to_string(v) +
                            " out of range [0, " + std::to_string(n) + ")");
}

}  // namespace

void WeightedDigraph::finish_adjacency() {
  out_.assign(n_, {});
  in_.assign(n_, {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    out_[edges_[e].tail].push_back(e);
    in_[edges_[e].head].push_back(e);
  }
}

WeightedDigraph WeightedDigraph::build(VertexId n,
                                       const std::vector<Edge>& edge_list,
                                       bool allow_zero_weight) {
  if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  WeightedDigraph g;
  g.n_ = n;
  g.edges_.reserve(edge_list.size());
  for (const Edge& e : edge_list) {
    check_vertex(e.tail, n, "edge tail");
    check_vertex(e.head, n, "edge head");
    if (e.weight.negative() || (!allow_zero_weight && e.weight.is_zero()))
      throw std::invalid_argument("edge weight must be positive, got " +
                                  e.weight.str());
    if (e.tail == e.head) continue;  // self-loops never affect a cut
    if (e.weight.is_zero()) continue;
    g.edges_.push_back(e);
  }
  g.finish_adjacency();
  return g;
}

Rational WeightedDigraph::total_weight() const {
  Rational t;
  for (const Edge& e : edges_) t += e.weight;
  return t;
}

Rational WeightedDigraph::min_weight() const {
  if (edges_.empty()) return Rational(0);
  Rational m = edges_[0].weight;
  for (const Edge& e : edges_)
    if (e.weight < m) m = e.weight;
  return m;
}

VertexWeightedDigraph VertexWeightedDigraph::build_impl(
    VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
    const std::vector<Rational>& vertex_weights, bool allow_zero) {
  if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  if (static_cast<VertexId>(vertex_weights.size()) != n)
    throw std::invalid_argument("vertex weight list has wrong length");
  VertexWeightedDigraph g;
  g.n_ = n;
  g.weights_ = vertex_weights;
  for (VertexId v = 0; v < n; ++v) {
    const Rational& w = vertex_weights[v];
    if (w.negative() || (!allow_zero && w.is_zero()))
      throw std::invalid_argument("vertex weight must be positive, got " +
                                  w.str() + " at vertex " + std::to_string(v));
  }
  for (auto [t, h] : edge_list) {
    check_vertex(t, n, "edge tail");
    check_vertex(h, n, "edge head");
    if (t == h) continue;
    g.tails_.push_back(t);
    g.heads_.push_back(h);
  }
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.tails_.size()); ++e) {
    g.out_[g.tails_[e]].push_back(e);
    g.in_[g.heads_[e]].push_back(e);
  }
  return g;
}

VertexWeightedDigraph VertexWeightedDigraph::build(
    VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
    const std::vector<Rational>& vertex_weights) {
  return build_impl(n, edge_list, vertex_weights, false);
}

VertexWeightedDigraph VertexWeightedDigraph::build_allow_zero(
    VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
    const std::vector<Rational>& vertex_weights) {
  return build_impl(n, edge_list, vertex_weights, true);
}

Rational VertexWeightedDigraph::total_weight() const {
  Rational t;
  for (const Rational& w : weights_) t += w;
  return t;
}

Rational VertexWeightedDigraph::min_weight() const {
  Rational m = weights_[0];
  for (const Rational& w : weights_)
    if (w < m) m = w;
  return m;
}

WeightedDigraph reverse(const WeightedDigraph& g) {
  WeightedDigraph r;
  r.n_ = g.vertex_count();
  r.edges_.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    r.edges_.push_back({e.head, e.tail, e.weight});
  r.finish_adjacency();
  return r;
}

ContractionResult contract_into_root(const WeightedDigraph& g, VertexId root,
                                     const std::vector<bool>& absorbed) {
  VertexId n = g.vertex_count();
  check_vertex(root, n, "root");
  if (static_cast<VertexId>(absorbed.size()) != n)
    throw std::invalid_argument("absorbed mask has wrong length");
  if (absorbed[root])
    throw std::invalid_argument("cannot contract the root into itself");

  ContractionResult res;
  res.old_to_new.assign(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    if (absorbed[v]) continue;
    res.old_to_new[v] = static_cast<VertexId>(res.new_to_old.size());
    res.new_to_old.push_back(v);
  }
  res.new_root = res.old_to_new[root];
  for (VertexId v = 0; v < n; ++v)
    if (absorbed[v]) res.old_to_new[v] = res.new_root;

  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    VertexId t = res.old_to_new[e.tail];
    VertexId h = res.old_to_new[e.head];
    if (t == h) continue;
    edges.push_back({t, h, e.weight});
  }
  res.graph = WeightedDigraph::build(
      static_cast<VertexId>(res.new_to_old.size()), edges, true);
  return res;
}

std::pair<WeightedDigraph, SplitMapping> split_graph(
    const VertexWeightedDigraph& g) {
  VertexId n = g.vertex_count();
  SplitMapping map;
  map.in_vertex.resize(n);
  map.out_vertex.resize(n);
  map.internal_edge.assign(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    map.in_vertex[v] = 2 * v;
    map.out_vertex[v] = 2 * v + 1;
  }
  std::vector<Edge> edges;
  edges.reserve(n + g.edge_count());
  for (VertexId v = 0; v < n; ++v) {
    if (g.weight(v).is_zero()) continue;  // zero capacity == absent
    map.internal_edge[v] = static_cast<EdgeId>(edges.size());
    edges.push_back({map.in_vertex[v], map.out_vertex[v], g.weight(v)});
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    VertexId u = g.edge_tail(e), v = g.edge_head(e);
    if (g.weight(u).is_zero()) continue;
    edges.push_back({map.out_vertex[u], map.in_vertex[v], g.weight(u)});
  }
  return {WeightedDigraph::build(2 * n, edges, true), std::move(map)};
}

Rational in_cut_weight(const WeightedDigraph& g,
                       const std::vector<bool>& in_set) {
  if (static_cast<VertexId>(in_set.size()) != g.vertex_count())
    throw std::invalid_argument("set mask has wrong length");
  Rational total;
  for (const Edge& e : g.edges())
    if (in_set[e.head] && !in_set[e.tail]) total += e.weight;
  return total;
}

std::optional<VertexInCut> vertex_in_cut(const VertexWeightedDigraph& g,
                                         VertexId root,
                                         const std::vector<bool>& s) {
  VertexId n = g.vertex_count();
  check_vertex(root, n, "root");
  if (static_cast<VertexId>(s.size()) != n)
    throw std::invalid_argument("set mask has wrong length");
  if (s[root]) throw std::invalid_argument("sink set must not contain root");

  std::vector<bool> in_sep(n, false);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    VertexId t = g.edge_tail(e), h = g.edge_head(e);
    if (!s[h] || s[t]) continue;
    if (t == root) return std::nullopt;  // root adjacent to the sink set
    in_sep[t] = true;
  }
  VertexInCut cut;
  for (VertexId v = 0; v < n; ++v) {
    if (!in_sep[v]) continue;
    cut.separator.push_back(v);
    cut.weight += g.weight(v);
  }
  return cut;
}

std::vector<bool> to_member_mask(VertexId n, const std::vector<VertexId>& ids) {
  std::vector<bool> mask(n, false);
  for (VertexId v : ids) {
    check_vertex(v, n, "member");
    mask[v] = true;
  }
  return mask;
}

VertexWeightedDigraph reverse(const VertexWeightedDigraph& g) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    edges.push_back({g.edge_head(e), g.edge_tail(e)});
  return VertexWeightedDigraph::build_allow_zero(g.vertex_count(), edges,
                                                 g.weights());
}

CutResult make_edge_cut(const WeightedDigraph& g, VertexId root,
                        std::vector<VertexId> sink) {
  if (sink.empty()) throw std::invalid_argument("sink component is empty");
  std::sort(sink.begin(), sink.end());
  std::vector<bool> mask = to_member_mask(g.vertex_count(), sink);
  if (mask[root]) throw std::invalid_argument("sink component contains root");
  CutResult cut;
  cut.kind = CutKind::edge;
  cut.root = root;
  cut.sink_component = std::move(sink);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (mask[g.edge(e).head] && !mask[g.edge(e).tail]) {
      cut.cut_edges.push_back(e);
      cut.weight += g.edge(e).weight;
    }
  return cut;
}

CutResult make_vertex_cut(const VertexWeightedDigraph& g, VertexId root,
                          std::vector<VertexId> sink) {
  if (sink.empty()) throw std::invalid_argument("sink component is empty");
  std::sort(sink.begin(), sink.end());
  std::vector<bool> mask = to_member_mask(g.vertex_count(), sink);
  auto vic = vertex_in_cut(g, root, mask);
  if (!vic)
    throw std::invalid_argument("sink component is adjacent to the root");
  CutResult cut;
  cut.kind = CutKind::vertex;
  cut.root = root;
  cut.sink_component = std::move(sink);
  cut.separator = vic->separator;
  cut.weight = vic->weight;
  return cut;
}

bool cut_is_valid(const WeightedDigraph& g, const CutResult& cut) {
  if (cut.kind != CutKind::edge || cut.sink_component.empty()) return false;
  std::vector<bool> mask = to_member_mask(g.vertex_count(), cut.sink_component);
  if (mask[cut.root]) return false;
  std::vector<EdgeId> expect;
  Rational w;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (mask[g.edge(e).head] && !mask[g.edge(e).tail]) {
      expect.push_back(e);
      w += g.edge(e).weight;
    }
  return expect == cut.cut_edges && w == cut.weight;
}

bool cut_is_valid(const VertexWeightedDigraph& g, const CutResult& cut) {
  if (cut.kind != CutKind::vertex || cut.sink_component.empty()) return false;
  std::vector<bool> mask = to_member_mask(g.vertex_count(), cut.sink_component);
  if (mask[cut.root]) return false;
  auto vic = vertex_in_cut(g, cut.root, mask);
  if (!vic) return false;
  return vic->separator == cut.separator && vic->weight == cut.weight;
}

}  // namespace dircut
