#include "dircut/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dircut {

namespace {

constexpr std::uint64_t kEdgeStreamTag = 0x65646765;    // "edge"
constexpr std::uint64_t kVertexStreamTag = 0x76657274;  // "vert"

void validate(const SparsifyParams& p) {
  if (!(p.eps > Rational(0) && p.eps < Rational(1)))
    throw std::invalid_argument("eps must lie in (0,1)");
  if (!p.guess.positive())
    throw std::invalid_argument("connectivity guess must be positive");
  if (p.k_guess < 1) throw std::invalid_argument("k guess must be >= 1");
}

std::int64_t ceil_positive(const Rational& r) {
  if (!r.positive()) throw std::invalid_argument("expected positive value");
  return r.ceil();
}

// One importance-sampled weight in tau units.
std::int64_t round_units(const Rational& w, const Rational& tau,
                         SplitRng& rng) {
  Rational q = w / tau;
  std::int64_t lo = q.floor();
  Rational frac = q - Rational(lo);
  return lo + (rng.bernoulli(frac) ? 1 : 0);
}

}  // namespace

SparsifyDerived SparsifyDerived::compute(VertexId n,
                                         const SparsifyParams& p) {
  validate(p);
  SparsifyDerived d;
  // Natural log of n, floored at 1 so tiny graphs stay finite.
  double ln = std::log(static_cast<double>(std::max<VertexId>(n, 2)));
  d.log_n = Rational(std::llround(ln * 65536.0), 65536);
  if (d.log_n < Rational(1)) d.log_n = Rational(1);

  Rational eps = p.eps;
  Rational k(p.k_guess);
  Rational aux_weight = eps * p.guess / (Rational(2) * k);
  Rational tau0 =
      p.constants.c_tau * eps * eps * p.guess / (k * d.log_n);

  // tau must exactly divide both the guess and the auxiliary weight. Taking
  // aux_units as a multiple of eps's numerator makes guess/tau an integer as
  // well, and rounding the multiplier up only shrinks tau.
  std::int64_t a = eps.num();
  std::int64_t m0 = ceil_positive(aux_weight / (Rational(a) * tau0));
  d.aux_units = a * std::max<std::int64_t>(m0, 1);
  d.tau = aux_weight / Rational(d.aux_units);

  Rational guess_units = p.guess / d.tau;
  if (!guess_units.is_integer())
    throw std::logic_error("tau does not divide the guess");
  d.guess_units = guess_units.num();

  Rational weight_cap = p.constants.c_w * k * d.log_n / (eps * eps);
  d.cap_units = std::max(
      {ceil_positive(weight_cap),
       ceil_positive(p.constants.c_zero * Rational(d.guess_units)),
       d.aux_units});
  d.delta = ceil_positive(p.constants.c_delta * k * d.log_n / (eps * eps));
  return d;
}

Rational importance_round(const Rational& w, const Rational& tau,
                          SplitRng& rng) {
  if (!w.positive() || !tau.positive())
    throw std::invalid_argument("importance_round needs positive inputs");
  return Rational(round_units(w, tau, rng)) * tau;
}

SparsifiedGraph sparsify_edge(const WeightedDigraph& g, VertexId root,
                              const SparsifyParams& params,
                              OpCounters* counters) {
  VertexId n = g.vertex_count();
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");
  SparsifiedGraph out;
  out.derived = SparsifyDerived::compute(n, params);
  out.tau = out.derived.tau;
  const SparsifyDerived& d = out.derived;
  if (counters) {
    counters->sparsify_calls++;
    counters->sparsify_item_ops += g.edge_count() + n;
  }

  SplitRng rng = SplitRng(params.seed).split(kEdgeStreamTag);

  // Importance sample every edge in id order (the stream is consumed even
  // for dropped edges, keeping the draw sequence deterministic). Edges out
  // of the root merge straight into the auxiliary edge of their head.
  struct SampledEdge {
    VertexId tail, head;
    std::int64_t units;
  };
  std::vector<SampledEdge> sampled;
  sampled.reserve(g.edge_count());
  std::vector<std::int64_t> aux(n, d.aux_units);
  for (const Edge& e : g.edges()) {
    std::int64_t u = round_units(e.weight, d.tau, rng);
    if (u == 0) continue;
    if (e.tail == root)
      aux[e.head] += u;
    else
      sampled.push_back({e.tail, e.head, u});
  }

  // Truncate, then contract every vertex whose unweighted in-degree
  // (sampled in-edges plus its auxiliary edge) reaches delta.
  for (SampledEdge& e : sampled) e.units = std::min(e.units, d.cap_units);
  for (VertexId v = 0; v < n; ++v) aux[v] = std::min(aux[v], d.cap_units);

  std::vector<std::int64_t> indeg(n, 0);
  for (const SampledEdge& e : sampled) indeg[e.head]++;
  for (VertexId v = 0; v < n; ++v)
    if (v != root) indeg[v]++;  // the auxiliary edge

  std::vector<bool> absorbed(n, false);
  VertexId survivor_count = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (v != root && indeg[v] >= d.delta)
      absorbed[v] = true;
    else
      survivor_count++;
  }
  out.degenerate = survivor_count == 1 && n > 1;

  out.orig_to_sparse.assign(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    if (absorbed[v]) continue;
    out.orig_to_sparse[v] = static_cast<VertexId>(out.sparse_to_orig.size());
    out.sparse_to_orig.push_back(v);
  }
  out.root = out.orig_to_sparse[root];

  // Post-contraction edges out of the root merge into the auxiliary edge as
  // well, so the aux_edge lookup stays unique and in-degrees never grow.
  std::vector<std::int64_t> sparse_aux(out.sparse_to_orig.size(), 0);
  for (VertexId v = 0; v < n; ++v)
    if (!absorbed[v] && v != root)
      sparse_aux[out.orig_to_sparse[v]] = aux[v];

  std::vector<Edge> final_edges;
  final_edges.reserve(sampled.size() + out.sparse_to_orig.size());
  std::vector<Edge> plain;
  plain.reserve(sampled.size());
  for (const SampledEdge& e : sampled) {
    VertexId t = absorbed[e.tail] ? root : e.tail;
    VertexId h = absorbed[e.head] ? root : e.head;
    if (t == h) continue;
    VertexId ts = out.orig_to_sparse[t], hs = out.orig_to_sparse[h];
    if (ts == out.root)
      sparse_aux[hs] = std::min(sparse_aux[hs] + e.units, d.cap_units);
    else
      plain.push_back({ts, hs, Rational(e.units)});
  }
  out.aux_edge.assign(out.sparse_to_orig.size(), -1);
  for (VertexId v = 0; v < static_cast<VertexId>(out.sparse_to_orig.size());
       ++v) {
    if (v == out.root) continue;
    out.aux_edge[v] = static_cast<EdgeId>(final_edges.size());
    final_edges.push_back({out.root, v, Rational(sparse_aux[v])});
  }
  final_edges.insert(final_edges.end(), plain.begin(), plain.end());

  out.graph = WeightedDigraph::build(
      static_cast<VertexId>(out.sparse_to_orig.size()), final_edges, true);
  return out;
}

namespace {

// Shared tail of the vertex sparsifier: given per-vertex units, stripped and
// rewired markers, assemble the SparsifiedVertexGraph for a concrete root.
SparsifiedVertexGraph assemble_vertex_graph(
    const VertexWeightedDigraph& g, VertexId root,
    const SparsifyDerived& d,
    std::vector<std::int64_t> units,
    const std::vector<std::pair<VertexId, VertexId>>& base_edges,
    std::vector<bool> rewired) {
  VertexId n = g.vertex_count();
  SparsifiedVertexGraph out;
  out.tau = d.tau;
  out.derived = d;
  out.original_n = n;
  units[root] = d.cap_units;  // the root's weight never binds a cut
  rewired[root] = false;

  // Auxiliary vertices for every non-root vertex that keeps its in-edges.
  out.aux_vertex.assign(n, -1);
  std::vector<Rational> weights;
  weights.reserve(2 * n);
  for (VertexId v = 0; v < n; ++v) weights.push_back(Rational(units[v]));
  VertexId next_id = n;
  for (VertexId v = 0; v < n; ++v) {
    if (v == root || rewired[v]) continue;
    out.aux_vertex[v] = next_id++;
    weights.push_back(Rational(d.aux_units));
  }

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(base_edges.size() + 3 * n);
  for (auto [t, h] : base_edges) {
    if (rewired[h]) continue;  // replaced by a single root edge below
    edges.push_back({t, h});
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    if (rewired[v]) {
      edges.push_back({root, v});
    } else {
      edges.push_back({root, out.aux_vertex[v]});
      edges.push_back({out.aux_vertex[v], v});
    }
  }

  out.graph = VertexWeightedDigraph::build_allow_zero(next_id, edges, weights);
  out.root = root;
  out.rewired = std::move(rewired);

  out.eligible_sink.assign(n, true);
  out.eligible_sink[root] = false;
  for (EdgeId e : g.out_edges(root)) out.eligible_sink[g.edge_head(e)] = false;
  return out;
}

}  // namespace

SparsifiedVertexGraph sparsify_vertex(const VertexWeightedDigraph& g,
                                      VertexId root,
                                      const SparsifyParams& params,
                                      OpCounters* counters) {
  VertexId n = g.vertex_count();
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");
  SparsifyDerived d = SparsifyDerived::compute(n, params);
  if (counters) {
    counters->sparsify_calls++;
    counters->sparsify_item_ops += g.edge_count() + n;
  }

  SplitRng rng = SplitRng(params.seed).split(kVertexStreamTag);
  std::vector<std::int64_t> units(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;  // the root's weight never binds a cut
    units[v] = std::min(round_units(g.weight(v), d.tau, rng), d.cap_units);
  }
  units[root] = d.cap_units;

  std::vector<std::pair<VertexId, VertexId>> kept;
  kept.reserve(g.edge_count());
  std::vector<std::int64_t> indeg(n, 1);  // start at 1 for the aux edge
  indeg[root] = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    VertexId t = g.edge_tail(e), h = g.edge_head(e);
    if (units[t] == 0) continue;  // zero-weight vertices lose out-edges
    kept.push_back({t, h});
    indeg[h]++;
  }
  std::vector<bool> rewired(n, false);
  for (VertexId v = 0; v < n; ++v)
    if (v != root && indeg[v] >= d.delta) rewired[v] = true;

  return assemble_vertex_graph(g, root, d, std::move(units), kept,
                               std::move(rewired));
}

VertexSparsifyCore sparsify_vertex_deferred(const VertexWeightedDigraph& g,
                                            const SparsifyParams& params,
                                            OpCounters* counters) {
  VertexId n = g.vertex_count();
  VertexSparsifyCore core;
  core.params = params;
  core.derived = SparsifyDerived::compute(n, params);
  core.n = n;
  if (counters) {
    counters->sparsify_calls++;
    counters->sparsify_item_ops += g.edge_count() + n;
  }

  SplitRng rng = SplitRng(params.seed).split(kVertexStreamTag);
  core.units.assign(n, 0);
  for (VertexId v = 0; v < n; ++v)
    core.units[v] =
        std::min(round_units(g.weight(v), core.derived.tau, rng),
                 core.derived.cap_units);

  core.zero_stripped.assign(n, false);
  core.stripped_out.assign(n, {});
  std::vector<std::int64_t> indeg(n, 1);
  for (VertexId v = 0; v < n; ++v)
    core.zero_stripped[v] = core.units[v] == 0;
  std::vector<std::pair<VertexId, VertexId>> kept;
  kept.reserve(g.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    VertexId t = g.edge_tail(e), h = g.edge_head(e);
    if (core.zero_stripped[t]) {
      core.stripped_out[t].push_back(h);
      continue;
    }
    kept.push_back({t, h});
    indeg[h]++;
  }
  core.rewire_flag.assign(n, false);
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] >= core.derived.delta) core.rewire_flag[v] = true;
  // Edges into flagged vertices are dropped once here; attach_root adds the
  // replacement root edge.
  core.kept_edges.reserve(kept.size());
  for (auto [t, h] : kept)
    if (!core.rewire_flag[h]) core.kept_edges.push_back({t, h});
  return core;
}

SparsifiedVertexGraph attach_root(const VertexWeightedDigraph& g,
                                  const VertexSparsifyCore& core,
                                  VertexId root, OpCounters* counters) {
  VertexId n = core.n;
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");
  std::uint64_t ops = static_cast<std::uint64_t>(n);

  std::vector<std::pair<VertexId, VertexId>> edges = core.kept_edges;
  std::vector<bool> rewired(core.rewire_flag);
  rewired[root] = false;

  // The root's weight is pinned to the cap, so its out-edges must be present
  // even if the core stripped them; in-degree of the restored heads may then
  // cross delta, in which case they are rewired on the spot.
  if (core.zero_stripped[root] && !core.stripped_out[root].empty()) {
    std::vector<std::int64_t> extra(n, 0);
    for (VertexId h : core.stripped_out[root]) extra[h]++;
    std::vector<std::int64_t> indeg(n, 0);
    for (auto [t, h] : edges) indeg[h]++;
    for (VertexId h : core.stripped_out[root]) {
      ops++;
      if (rewired[h]) continue;
      if (h != root && indeg[h] + extra[h] + 1 >= core.derived.delta) {
        rewired[h] = true;
        std::erase_if(edges, [h](auto e) { return e.second == h; });
      } else {
        edges.push_back({root, h});
      }
    }
  }
  if (counters) counters->attach_root_ops += ops;

  return assemble_vertex_graph(g, root, core.derived, core.units, edges,
                               std::move(rewired));
}

}  // namespace dircut
