#include "dircut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dircut {

namespace {

constexpr VertexId kEnumerationLimit = 20;

CutResult cut_from_flow(const WeightedDigraph& g, VertexId root,
                        const FlowResult& flow) {
  CutResult cut;
  cut.kind = CutKind::edge;
  cut.root = root;
  std::vector<bool> src(g.vertex_count(), false);
  for (VertexId v : flow.source_side) src[v] = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!src[v]) cut.sink_component.push_back(v);
  cut.cut_edges = flow.min_cut_edges;
  cut.weight = flow.value;
  return cut;
}

CutResult cut_from_vertex_flow(VertexId root, const VertexFlowResult& flow) {
  CutResult cut;
  cut.kind = CutKind::vertex;
  cut.root = root;
  cut.sink_component = flow.sink_component;
  cut.separator = flow.separator;
  cut.weight = flow.value;
  return cut;
}

}  // namespace

CutResult exact_rooted_ec(const WeightedDigraph& g, VertexId root,
                          OpCounters* counters) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("rooted cut needs n >= 2");
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");

  std::optional<FlowResult> best;
  for (VertexId t = 0; t < n; ++t) {
    if (t == root) continue;
    FlowResult f = max_flow(g, root, t, counters);
    if (!best || f.value < best->value) best = std::move(f);
  }
  return cut_from_flow(g, root, *best);
}

std::optional<CutResult> exact_rooted_vc(const VertexWeightedDigraph& g,
                                         VertexId root, OpCounters* counters) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("rooted cut needs n >= 2");
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");

  std::vector<bool> excluded(n, false);
  excluded[root] = true;
  for (EdgeId e : g.out_edges(root)) excluded[g.edge_head(e)] = true;

  std::optional<VertexFlowResult> best;
  for (VertexId t = 0; t < n; ++t) {
    if (excluded[t]) continue;
    VertexFlowResult f = vertex_max_flow(g, root, t, counters);
    if (!best || f.value < best->value) best = std::move(f);
  }
  if (!best) return std::nullopt;
  return cut_from_vertex_flow(root, *best);
}

CutResult exact_global_ec(const WeightedDigraph& g, OpCounters* counters) {
  if (g.vertex_count() < 2)
    throw std::invalid_argument("global cut needs n >= 2");
  CutResult fwd = exact_rooted_ec(g, 0, counters);
  CutResult bwd = exact_rooted_ec(reverse(g), 0, counters);
  if (fwd.weight <= bwd.weight) return fwd;
  // Map the reversed-graph result back: its sink T becomes a source
  // component of g; the complement V \ T is then a valid sink component of g
  // for any nominal root inside T (reverse() preserves edge ids).
  CutResult mapped;
  mapped.kind = CutKind::edge;
  mapped.weight = bwd.weight;
  mapped.cut_edges = bwd.cut_edges;
  std::vector<bool> in_T =
      to_member_mask(g.vertex_count(), bwd.sink_component);
  mapped.root = bwd.sink_component.front();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!in_T[v]) mapped.sink_component.push_back(v);
  return mapped;
}

std::optional<CutResult> exact_global_vc(const VertexWeightedDigraph& g,
                                         OpCounters* counters) {
  if (g.vertex_count() < 2)
    throw std::invalid_argument("global cut needs n >= 2");
  std::optional<CutResult> best;
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    std::optional<CutResult> c = exact_rooted_vc(g, r, counters);
    if (c && (!best || c->weight < best->weight)) best = std::move(c);
  }
  return best;
}

CutResult brute_force_rooted_ec(const WeightedDigraph& g, VertexId root) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("rooted cut needs n >= 2");
  if (n > kEnumerationLimit)
    throw std::invalid_argument("exhaustive oracle limited to n <= 20");

  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < n; ++v)
    if (v != root) free_vertices.push_back(v);
  int bits = static_cast<int>(free_vertices.size());

  std::vector<bool> in_set(n, false);
  Rational weight;
  std::optional<Rational> best;
  std::uint32_t best_code = 0;

  // Gray-code walk: one vertex toggles per step, in-cut weight updated
  // incrementally from that vertex's incident edges.
  std::uint32_t gray = 0;
  for (std::uint32_t code = 1; code < (1u << bits); ++code) {
    std::uint32_t next_gray = code ^ (code >> 1);
    std::uint32_t changed = gray ^ next_gray;
    gray = next_gray;
    VertexId x = free_vertices[std::countr_zero(changed)];
    if (!in_set[x]) {
      in_set[x] = true;
      for (EdgeId e : g.in_edges(x))
        if (!in_set[g.edge(e).tail]) weight += g.edge(e).weight;
      for (EdgeId e : g.out_edges(x))
        if (in_set[g.edge(e).head]) weight -= g.edge(e).weight;
    } else {
      in_set[x] = false;
      for (EdgeId e : g.in_edges(x))
        if (!in_set[g.edge(e).tail]) weight -= g.edge(e).weight;
      for (EdgeId e : g.out_edges(x))
        if (in_set[g.edge(e).head]) weight += g.edge(e).weight;
    }
    if (!best || weight < *best) {
      best = weight;
      best_code = gray;
    }
  }

  CutResult cut;
  cut.kind = CutKind::edge;
  cut.root = root;
  std::vector<bool> mask(n, false);
  for (int b = 0; b < bits; ++b)
    if (best_code & (1u << b)) {
      cut.sink_component.push_back(free_vertices[b]);
      mask[free_vertices[b]] = true;
    }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    if (mask[g.edge(e).head] && !mask[g.edge(e).tail]) {
      cut.cut_edges.push_back(e);
      cut.weight += g.edge(e).weight;
    }
  return cut;
}

std::optional<CutResult> brute_force_rooted_vc(const VertexWeightedDigraph& g,
                                               VertexId root) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("rooted cut needs n >= 2");
  if (n > kEnumerationLimit)
    throw std::invalid_argument("exhaustive oracle limited to n <= 20");

  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < n; ++v)
    if (v != root) free_vertices.push_back(v);
  int bits = static_cast<int>(free_vertices.size());

  std::optional<Rational> best;
  std::uint32_t best_code = 0;
  std::vector<bool> in_set(n, false);
  for (std::uint32_t code = 1; code < (1u << bits); ++code) {
    std::fill(in_set.begin(), in_set.end(), false);
    for (int b = 0; b < bits; ++b)
      if (code & (1u << b)) in_set[free_vertices[b]] = true;
    auto cut = vertex_in_cut(g, root, in_set);
    if (!cut) continue;
    if (!best || cut->weight < *best) {
      best = cut->weight;
      best_code = code;
    }
  }
  if (!best) return std::nullopt;

  CutResult cut;
  cut.kind = CutKind::vertex;
  cut.root = root;
  std::fill(in_set.begin(), in_set.end(), false);
  for (int b = 0; b < bits; ++b)
    if (best_code & (1u << b)) {
      cut.sink_component.push_back(free_vertices[b]);
      in_set[free_vertices[b]] = true;
    }
  auto vic = vertex_in_cut(g, root, in_set);
  cut.separator = vic->separator;
  cut.weight = vic->weight;
  return cut;
}

Rational sink_constrained_cut_ec(const WeightedDigraph& g, VertexId root,
                                 VertexId t, VertexId k) {
  VertexId n = g.vertex_count();
  if (n > kEnumerationLimit)
    throw std::invalid_argument("exhaustive oracle limited to n <= 20");
  if (t == root) throw std::invalid_argument("t must differ from root");
  if (k < 1) throw std::invalid_argument("k must be at least 1");

  std::vector<VertexId> others;
  for (VertexId v = 0; v < n; ++v)
    if (v != root && v != t) others.push_back(v);
  int bits = static_cast<int>(others.size());

  std::optional<Rational> best;
  std::vector<bool> in_set(n, false);
  for (std::uint32_t code = 0; code < (1u << bits); ++code) {
    if (std::popcount(code) + 1 > k) continue;
    std::fill(in_set.begin(), in_set.end(), false);
    in_set[t] = true;
    for (int b = 0; b < bits; ++b)
      if (code & (1u << b)) in_set[others[b]] = true;
    Rational w = in_cut_weight(g, in_set);
    if (!best || w < *best) best = w;
  }
  return *best;
}

std::optional<Rational> sink_constrained_cut_vc(const VertexWeightedDigraph& g,
                                                VertexId root, VertexId t,
                                                VertexId k) {
  VertexId n = g.vertex_count();
  if (n > kEnumerationLimit)
    throw std::invalid_argument("exhaustive oracle limited to n <= 20");
  if (t == root) throw std::invalid_argument("t must differ from root");
  if (k < 1) throw std::invalid_argument("k must be at least 1");

  std::vector<VertexId> others;
  for (VertexId v = 0; v < n; ++v)
    if (v != root && v != t) others.push_back(v);
  int bits = static_cast<int>(others.size());

  std::optional<Rational> best;
  std::vector<bool> in_set(n, false);
  for (std::uint32_t code = 0; code < (1u << bits); ++code) {
    if (std::popcount(code) + 1 > k) continue;
    std::fill(in_set.begin(), in_set.end(), false);
    in_set[t] = true;
    for (int b = 0; b < bits; ++b)
      if (code & (1u << b)) in_set[others[b]] = true;
    auto cut = vertex_in_cut(g, root, in_set);
    if (!cut) continue;
    if (!best || cut->weight < *best) best = cut->weight;
  }
  return best;
}

}  // namespace dircut
