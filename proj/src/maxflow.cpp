#include "dircut/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dircut {

namespace {

using i64 = std::int64_t;

// Arc-pair residual network; arc 2i is the forward copy of input edge i and
// arc 2i+1 its reverse.
class Dinic {
 public:
  Dinic(VertexId n, std::size_t m_hint) : n_(n), head_(static_cast<std::size_t>(n)) {
    to_.reserve(2 * m_hint);
    res_.reserve(2 * m_hint);
  }

  void add_edge(VertexId u, VertexId v, i64 cap) {
    head_[u].push_back(static_cast<int>(to_.size()));
    to_.push_back(v);
    res_.push_back(cap);
    head_[v].push_back(static_cast<int>(to_.size()));
    to_.push_back(u);
    res_.push_back(0);
  }

  i64 run(VertexId s, VertexId t, OpCounters* counters) {
    s_ = s;
    t_ = t;
    i64 total = 0;
    while (bfs(counters)) {
      iter_.assign(n_, 0);
      for (;;) {
        i64 pushed = dfs(s_, std::numeric_limits<i64>::max(), counters);
        if (pushed == 0) break;
        total += pushed;
        if (counters) counters->flow_augmentations++;
      }
    }
    return total;
  }

  // Vertices reachable from s in the final residual graph.
  std::vector<bool> residual_reachable() const {
    std::vector<bool> seen(n_, false);
    std::vector<VertexId> queue{s_};
    seen[s_] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId u = queue[qi];
      for (int a : head_[u]) {
        if (res_[a] <= 0 || seen[to_[a]]) continue;
        seen[to_[a]] = true;
        queue.push_back(to_[a]);
      }
    }
    return seen;
  }

  i64 residual(int arc) const { return res_[arc]; }

 private:
  bool bfs(OpCounters* counters) {
    level_.assign(n_, -1);
    level_[s_] = 0;
    std::vector<VertexId> queue{s_};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId u = queue[qi];
      for (int a : head_[u]) {
        if (counters) counters->flow_arc_traversals++;
        if (res_[a] <= 0 || level_[to_[a]] >= 0) continue;
        level_[to_[a]] = level_[u] + 1;
        queue.push_back(to_[a]);
      }
    }
    return level_[t_] >= 0;
  }

  i64 dfs(VertexId u, i64 limit, OpCounters* counters) {
    if (u == t_) return limit;
    for (std::size_t& i = iter_[u]; i < head_[u].size(); ++i) {
      int a = head_[u][i];
      VertexId v = to_[a];
      if (counters) counters->flow_arc_traversals++;
      if (res_[a] <= 0 || level_[v] != level_[u] + 1) continue;
      i64 pushed = dfs(v, std::min(limit, res_[a]), counters);
      if (pushed > 0) {
        res_[a] -= pushed;
        res_[a ^ 1] += pushed;
        return pushed;
      }
    }
    level_[u] = -1;
    return 0;
  }

  VertexId n_;
  VertexId s_ = 0, t_ = 0;
  std::vector<std::vector<int>> head_;
  std::vector<VertexId> to_;
  std::vector<i64> res_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

i64 checked_mul(i64 a, i64 b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > std::numeric_limits<i64>::max() / 4)
    throw std::overflow_error("capacity scaling overflow");
  return static_cast<i64>(p);
}

// Common-denominator scale turning all weights into integers.
i64 common_scale(const std::vector<Rational>& ws) {
  i64 scale = 1;
  for (const Rational& w : ws) {
    i64 d = w.den();
    i64 g = std::gcd(scale, d);
    scale = checked_mul(scale / g, d);
  }
  return scale;
}

i64 scaled_int(const Rational& w, i64 scale) {
  return checked_mul(w.num(), scale / w.den());
}

}  // namespace

FlowResult max_flow(const WeightedDigraph& g, VertexId s, VertexId t,
                    OpCounters* counters) {
  VertexId n = g.vertex_count();
  if (s < 0 || s >= n || t < 0 || t >= n)
    throw std::out_of_range("flow endpoint out of range");
  if (s == t) throw std::invalid_argument("flow endpoints must differ");
  if (counters) counters->dinic_calls++;

  std::vector<Rational> ws;
  ws.reserve(g.edge_count());
  for (const Edge& e : g.edges()) ws.push_back(e.weight);
  i64 scale = common_scale(ws);

  Dinic dinic(n, g.edge_count());
  i64 total_cap = 0;
  for (const Edge& e : g.edges()) {
    i64 c = scaled_int(e.weight, scale);
    total_cap += c;
    if (total_cap > std::numeric_limits<i64>::max() / 4)
      throw std::overflow_error("total capacity overflow");
    dinic.add_edge(e.tail, e.head, c);
  }
  i64 value_int = dinic.run(s, t, counters);

  FlowResult result;
  result.value = Rational(value_int) / Rational(scale);
  std::vector<bool> reach = dinic.residual_reachable();
  i64 cut_int = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    const Edge& ed = g.edge(e);
    if (reach[ed.tail] && !reach[ed.head]) {
      result.min_cut_edges.push_back(e);
      cut_int += scaled_int(ed.weight, scale);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (reach[v]) result.source_side.push_back(v);

  // Flow-cut duality; a violation here means the solver is broken.
  if (cut_int != value_int)
    throw std::logic_error("max-flow/min-cut mismatch: flow " +
                           std::to_string(value_int) + " vs cut " +
                           std::to_string(cut_int));
  return result;
}

VertexFlowResult vertex_max_flow(const VertexWeightedDigraph& g, VertexId s,
                                 VertexId t, OpCounters* counters) {
  VertexId n = g.vertex_count();
  if (s < 0 || s >= n || t < 0 || t >= n)
    throw std::out_of_range("flow endpoint out of range");
  if (s == t) throw std::invalid_argument("flow endpoints must differ");
  for (EdgeId e : g.out_edges(s))
    if (g.edge_head(e) == t)
      throw std::invalid_argument(
          "no finite vertex cut: edge from source to sink");
  if (counters) counters->dinic_calls++;

  i64 scale = common_scale(g.weights());
  i64 total = 0;
  for (const Rational& w : g.weights()) {
    total += scaled_int(w, scale);
    if (total > std::numeric_limits<i64>::max() / 8)
      throw std::overflow_error("total vertex capacity overflow");
  }
  // Above any possible flow value, so connectors out of the source never
  // bind (the source's own weight is not removable).
  i64 cap_inf = total + 1;

  auto [split, map] = split_graph(g);
  VertexId sp = map.out_vertex[s], tn = map.in_vertex[t];

  Dinic dinic(split.vertex_count(), split.edge_count());
  // edge_kind/edge_owner: internal split edges map back to their vertex,
  // connectors to their tail vertex.
  std::vector<VertexId> owner(split.edge_count());
  std::vector<bool> internal(split.edge_count(), false);
  for (VertexId v = 0; v < n; ++v)
    if (map.internal_edge[v] >= 0) {
      owner[map.internal_edge[v]] = v;
      internal[map.internal_edge[v]] = true;
    }
  for (EdgeId e = 0; e < static_cast<EdgeId>(split.edge_count()); ++e) {
    const Edge& ed = split.edge(e);
    i64 c = scaled_int(ed.weight, scale);
    if (!internal[e]) {
      // connector (u+, v-); tail vertex u = (tail - 1) / 2
      owner[e] = (ed.tail - 1) / 2;
      if (owner[e] == s) c = cap_inf;
    }
    dinic.add_edge(ed.tail, ed.head, c);
  }
  i64 value_int = dinic.run(sp, tn, counters);

  VertexFlowResult result;
  result.value = Rational(value_int) / Rational(scale);

  std::vector<bool> reach = dinic.residual_reachable();
  std::vector<bool> in_sep(n, false);
  i64 sep_int = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(split.edge_count()); ++e) {
    const Edge& ed = split.edge(e);
    if (!(reach[ed.tail] && !reach[ed.head])) continue;
    VertexId v = owner[e];
    if (v == s || v == t)
      throw std::logic_error("vertex cut mapped onto an endpoint");
    if (!in_sep[v]) {
      in_sep[v] = true;
      sep_int += scaled_int(g.weight(v), scale);
    }
  }
  // The charging argument gives sep <= cut value <= any separator weight,
  // so equality must hold.
  if (sep_int != value_int)
    throw std::logic_error("vertex cut weight mismatch: flow " +
                           std::to_string(value_int) + " vs separator " +
                           std::to_string(sep_int));

  for (VertexId v = 0; v < n; ++v)
    if (in_sep[v]) result.separator.push_back(v);

  // Sink component: unreachable from s in g minus the separator.
  std::vector<bool> seen(n, false);
  std::vector<VertexId> queue{s};
  seen[s] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId u = queue[qi];
    for (EdgeId e : g.out_edges(u)) {
      VertexId v = g.edge_head(e);
      if (seen[v] || in_sep[v]) continue;
      seen[v] = true;
      queue.push_back(v);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!seen[v] && !in_sep[v]) result.sink_component.push_back(v);
  return result;
}

}  // namespace dircut
