#include <bit>
#include <cmath>
#include <map>

#include "doctest.h"
#include "dircut/sparsify.hpp"
#include "test_support.hpp"

using namespace dircut;
using namespace test_support;

namespace {

bool same_sparsified(const SparsifiedGraph& a, const SparsifiedGraph& b) {
  if (a.root != b.root || a.tau != b.tau) return false;
  if (a.sparse_to_orig != b.sparse_to_orig) return false;
  if (a.graph.edge_count() != b.graph.edge_count()) return false;
  for (EdgeId e = 0; e < static_cast<EdgeId>(a.graph.edge_count()); ++e) {
    const Edge& x = a.graph.edge(e);
    const Edge& y = b.graph.edge(e);
    if (x.tail != y.tail || x.head != y.head || x.weight != y.weight)
      return false;
  }
  return a.aux_edge == b.aux_edge;
}

SparsifyParams params_for(Rational eps, Rational guess, std::int64_t k,
                          std::uint64_t seed) {
  SparsifyParams p;
  p.eps = eps;
  p.guess = guess;
  p.k_guess = k;
  p.seed = seed;
  return p;
}

// Structural invariant replay shared by several tests.
void check_edge_invariants(const SparsifiedGraph& s) {
  const SparsifyDerived& d = s.derived;
  std::vector<std::int64_t> indeg(s.graph.vertex_count(), 0);
  for (const Edge& e : s.graph.edges()) {
    REQUIRE(e.weight.is_integer());
    CHECK(e.weight.num() >= 1);
    CHECK(e.weight.num() <= d.cap_units);
    indeg[e.head]++;
  }
  for (VertexId v = 0; v < s.graph.vertex_count(); ++v) {
    if (v == s.root) continue;
    CHECK(indeg[v] <= d.delta);
    REQUIRE(s.aux_edge[v] >= 0);
    const Edge& aux = s.graph.edge(s.aux_edge[v]);
    CHECK(aux.tail == s.root);
    CHECK(aux.head == v);
    CHECK(aux.weight.num() >= d.aux_units);
  }
  CHECK(d.guess_units >= 1);
  CHECK(d.aux_units >= 1);
}

void check_vertex_invariants(const SparsifiedVertexGraph& s,
                             const VertexWeightedDigraph& original) {
  const SparsifyDerived& d = s.derived;
  const VertexWeightedDigraph& g = s.graph;
  std::vector<std::int64_t> indeg(g.vertex_count(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    indeg[g.edge_head(e)]++;
    // zero-weight vertices have no outgoing edges
    CHECK_FALSE(g.weight(g.edge_tail(e)).is_zero());
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    REQUIRE(g.weight(v).is_integer());
    CHECK(g.weight(v).num() >= 0);
    CHECK(g.weight(v).num() <= d.cap_units);
    if (v != s.root) CHECK(indeg[v] <= d.delta);
  }
  // auxiliary structure: r -> a_v -> v for every non-rewired non-root v
  for (VertexId v = 0; v < s.original_n; ++v) {
    if (v == s.root) continue;
    if (s.rewired[v]) {
      CHECK(s.aux_vertex[v] == -1);
      bool root_edge = false;
      for (EdgeId e : g.in_edges(v))
        if (g.edge_tail(e) == s.root) root_edge = true;
      CHECK(root_edge);
      CHECK(indeg[v] == 1);
    } else {
      VertexId a = s.aux_vertex[v];
      REQUIRE(a >= s.original_n);
      CHECK(g.weight(a).num() == d.aux_units);
      REQUIRE(g.in_edges(a).size() == 1);
      CHECK(g.edge_tail(g.in_edges(a)[0]) == s.root);
      REQUIRE(g.out_edges(a).size() == 1);
      CHECK(g.edge_head(g.out_edges(a)[0]) == v);
    }
  }
  // eligible sinks reproduce the original V'
  std::vector<bool> expected(s.original_n, true);
  expected[s.root] = false;
  for (EdgeId e : original.out_edges(s.root))
    expected[original.edge_head(e)] = false;
  for (VertexId v = 0; v < s.original_n; ++v)
    CHECK(s.eligible_sink[v] == expected[v]);
}

}  // namespace

TEST_CASE("derived quantities divide exactly") {
  for (auto [num, den] : {std::pair<int, int>{1, 5}, {1, 4}, {3, 10}, {2, 7}}) {
    SparsifyParams p = params_for(Rational(num, den), Rational(17, 3), 4, 1);
    SparsifyDerived d = SparsifyDerived::compute(50, p);
    Rational aux = p.eps * p.guess / Rational(2 * p.k_guess);
    CHECK(aux / d.tau == Rational(d.aux_units));
    CHECK(p.guess / d.tau == Rational(d.guess_units));
    CHECK(d.tau <= p.constants.c_tau * p.eps * p.eps * p.guess /
                       (Rational(p.k_guess) * d.log_n));
    CHECK(d.cap_units >= d.aux_units);
    CHECK(d.cap_units >=
          (p.constants.c_zero * Rational(d.guess_units)).ceil());
  }
}

TEST_CASE("importance_round distribution") {
  Rational tau(1, 7);
  SplitRng rng(101);

  // exact multiple: deterministic
  for (int i = 0; i < 50; ++i)
    CHECK(importance_round(Rational(3, 7), tau, rng) == Rational(3, 7));

  // w = 2.5 tau: mean over many draws within 3 standard errors
  Rational w = Rational(5, 14);
  long long units_total = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i)
    units_total += (importance_round(w, tau, rng) / tau).num();
  double mean = static_cast<double>(units_total) / trials;
  double se = 0.5 / std::sqrt(static_cast<double>(trials));
  CHECK(mean > 2.5 - 3 * se);
  CHECK(mean < 2.5 + 3 * se);

  // w = 0.2 tau: zero with probability 0.8
  Rational small = tau * Rational(1, 5);
  int zeros = 0;
  for (int i = 0; i < trials; ++i)
    if (importance_round(small, tau, rng).is_zero()) zeros++;
  double zfrac = static_cast<double>(zeros) / trials;
  CHECK(zfrac > 0.8 - 0.01);
  CHECK(zfrac < 0.8 + 0.01);
}

TEST_CASE("sparsify_edge deterministic path") {
  // weights already integer multiples of tau, delta > n, cap above all
  // weights: the output is g / tau plus auxiliary edges.
  SparsifyParams p = params_for(Rational(1, 2), Rational(8), 1, 5);
  SparsifyDerived d = SparsifyDerived::compute(4, p);
  // tau = aux/Mu: make every weight a multiple of tau by scaling
  WeightedDigraph g = make_graph(
      4, {{1, 2, d.tau * Rational(3)}, {2, 3, d.tau * Rational(5)}});
  SparsifiedGraph s = sparsify_edge(g, 0, p);
  CHECK_FALSE(s.degenerate);
  CHECK(s.graph.vertex_count() == 4);
  // 3 aux edges + 2 original edges
  REQUIRE(s.graph.edge_count() == 5);
  std::map<std::pair<VertexId, VertexId>, std::int64_t> got;
  for (const Edge& e : s.graph.edges()) got[{e.tail, e.head}] = e.weight.num();
  CHECK(got[{1, 2}] == 3);
  CHECK(got[{2, 3}] == 5);
  CHECK(got[{0, 1}] == d.aux_units);
  check_edge_invariants(s);
}

TEST_CASE("sparsify_edge contracts high in-degree vertices into the root") {
  // star into v with delta + 5 unit in-edges; delta depends on n, so find
  // the fixed point where the graph is exactly big enough
  SparsifyParams p = params_for(Rational(1, 2), Rational(2), 1, 7);
  VertexId n = 16;
  for (int i = 0; i < 20; ++i) {
    SparsifyDerived d = SparsifyDerived::compute(n, p);
    VertexId need = static_cast<VertexId>(d.delta + 7);
    if (need == n) break;
    n = need;
  }
  SparsifyDerived d = SparsifyDerived::compute(n, p);
  std::int64_t spokes = n - 2;
  REQUIRE(spokes >= d.delta + 4);
  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  // heavy weights so nothing gets sampled away
  for (std::int64_t i = 0; i < spokes; ++i)
    edges.push_back({static_cast<VertexId>(2 + i), 1, Rational(50)});
  WeightedDigraph g = make_graph(n, edges);
  SparsifiedGraph s = sparsify_edge(g, 0, p);
  CHECK(s.orig_to_sparse[1] == -1);  // v was contracted
  check_edge_invariants(s);
}

TEST_CASE("sparsify_edge determinism given a seed") {
  SplitRng rng(61);
  WeightedDigraph g = random_edge_graph(10, 20, 9, rng);
  SparsifyParams p = params_for(Rational(1, 4), Rational(6), 2, 99);
  SparsifiedGraph a = sparsify_edge(g, 0, p);
  SparsifiedGraph b = sparsify_edge(g, 0, p);
  CHECK(same_sparsified(a, b));
  SparsifyParams q = p;
  q.seed = 100;
  CHECK_FALSE(same_sparsified(a, sparsify_edge(g, 0, q)));
}

TEST_CASE("sparsify_edge structural invariants over many seeds") {
  SplitRng rng(67);
  WeightedDigraph g = random_edge_graph(12, 30, 9, rng);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SparsifyParams p = params_for(Rational(1, 4), Rational(7, 2), 3, seed);
    SparsifiedGraph s = sparsify_edge(g, 2, p);
    check_edge_invariants(s);
  }
}

TEST_CASE("sparsify_edge cut preservation against exhaustive enumeration") {
  // Claim-level bounds on h(S) = in-cut after sampling and aux edges, i.e.
  // with truncation and contraction disabled (cap and delta out of reach).
  SplitRng grng(71);
  WeightedDigraph g = random_edge_graph(9, 18, 9, grng);
  VertexId root = 0;
  Rational eps(1, 4);
  Rational lambda(8);
  std::int64_t k = 3;
  int good = 0;
  const int seeds = 60;
  for (int seed = 0; seed < seeds; ++seed) {
    SparsifyParams p = params_for(eps, lambda, k, 1000 + seed);
    SparsifiedGraph s = sparsify_edge(g, root, p);
    bool ok = true;
    for (unsigned code = 1; code < 256 && ok; ++code) {
      std::vector<bool> orig_mask(9, false);
      std::vector<bool> sparse_mask(s.graph.vertex_count(), false);
      bool survived = true;
      for (int b = 0; b < 8; ++b)
        if (code & (1u << b)) {
          VertexId v = static_cast<VertexId>(b + 1);
          orig_mask[v] = true;
          if (s.orig_to_sparse[v] < 0)
            survived = false;
          else
            sparse_mask[s.orig_to_sparse[v]] = true;
        }
      if (!survived) continue;  // cut-set preservation checked elsewhere
      Rational f = in_cut_weight(g, orig_mask);
      Rational h = in_cut_weight(s.graph, sparse_mask) * s.tau;
      int size = static_cast<int>(std::popcount(code));
      Rational upper = (Rational(1) + eps) * f +
                       eps * lambda * Rational(size, static_cast<int>(k));
      Rational lower = (Rational(1) - eps) * f;
      Rational clamp = p.constants.c_zero * lambda;
      if (h > upper) ok = false;
      if (h < lower && h < clamp) ok = false;
    }
    if (ok) good++;
  }
  // allow a little Monte Carlo slack at unit-test scale
  CHECK(good >= seeds - 2);
}

TEST_CASE("sparsify_vertex basics and invariants") {
  // single non-root vertex with weight an exact multiple of tau
  SparsifyParams p = params_for(Rational(1, 2), Rational(4), 1, 9);
  SparsifyDerived d = SparsifyDerived::compute(2, p);
  VertexWeightedDigraph g = VertexWeightedDigraph::build(
      2, {{0, 1}}, {Rational(1), d.tau * Rational(6)});
  SparsifiedVertexGraph s = sparsify_vertex(g, 0, p);
  CHECK(s.graph.weight(1).num() == 6);
  REQUIRE(s.aux_vertex[1] >= 2);
  check_vertex_invariants(s, g);

  SplitRng rng(73);
  VertexWeightedDigraph h = random_vertex_graph(10, 25, 9, rng);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SparsifiedVertexGraph sv =
        sparsify_vertex(h, 1, params_for(Rational(1, 4), Rational(5), 2, seed));
    check_vertex_invariants(sv, h);
  }
}

TEST_CASE("sparsify_vertex rewires high in-degree vertices") {
  SparsifyParams p = params_for(Rational(1, 2), Rational(2), 1, 11);
  VertexId n = 16;
  for (int i = 0; i < 20; ++i) {
    SparsifyDerived d0 = SparsifyDerived::compute(n, p);
    VertexId need = static_cast<VertexId>(d0.delta + 5);
    if (need == n) break;
    n = need;
  }
  SparsifyDerived d = SparsifyDerived::compute(n, p);
  std::int64_t spokes = n - 2;
  REQUIRE(spokes >= d.delta + 2);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Rational> ws(n, Rational(50));
  for (std::int64_t i = 0; i < spokes; ++i)
    edges.push_back({static_cast<VertexId>(2 + i), 1});
  VertexWeightedDigraph g = VertexWeightedDigraph::build(n, edges, ws);
  SparsifiedVertexGraph s = sparsify_vertex(g, 0, p);
  CHECK(s.rewired[1]);
  CHECK(s.aux_vertex[1] == -1);
  // v now has exactly the single root edge
  CHECK(s.graph.in_edges(1).size() == 1);
  CHECK(s.graph.edge_tail(s.graph.in_edges(1)[0]) == 0);
  // still recorded as an original eligible sink
  CHECK(s.eligible_sink[1]);
  check_vertex_invariants(s, g);
}

TEST_CASE("sparsify_vertex cut preservation against exhaustive enumeration") {
  SplitRng grng(79);
  VertexWeightedDigraph g = random_vertex_graph(8, 16, 9, grng);
  VertexId root = 0;
  Rational eps(1, 4);
  Rational kappa(6);
  std::int64_t k = 2;
  std::vector<bool> eligible(8, true);
  eligible[root] = false;
  for (EdgeId e : g.out_edges(root)) eligible[g.edge_head(e)] = false;

  int good = 0;
  const int seeds = 60;
  for (int seed = 0; seed < seeds; ++seed) {
    SparsifyParams p = params_for(eps, kappa, k, 2000 + seed);
    SparsifiedVertexGraph s = sparsify_vertex(g, root, p);
    bool ok = true;
    for (unsigned code = 1; code < 128 && ok; ++code) {
      std::vector<bool> mask(8, false);
      std::vector<bool> sparse_mask(s.graph.vertex_count(), false);
      bool in_vprime = true;
      int size = 0;
      for (int b = 0; b < 7; ++b)
        if (code & (1u << b)) {
          VertexId v = static_cast<VertexId>(b + 1);
          if (!eligible[v]) in_vprime = false;
          mask[v] = true;
          sparse_mask[v] = true;
          size++;
        }
      if (!in_vprime) continue;
      auto f = vertex_in_cut(g, root, mask);
      REQUIRE(f.has_value());
      auto h = vertex_in_cut(s.graph, root, sparse_mask);
      if (!h) continue;  // rewired member: set no longer induces a cut
      Rational hw = h->weight * s.tau;
      Rational upper = (Rational(1) + eps) * f->weight +
                       eps * kappa * Rational(size, static_cast<int>(k));
      Rational lower = (Rational(1) - eps) * f->weight;
      Rational clamp = p.constants.c_zero * kappa;
      if (hw > upper) ok = false;
      if (hw < lower && hw < clamp) ok = false;
    }
    if (ok) good++;
  }
  CHECK(good >= seeds - 2);
}

TEST_CASE("small cheap sinks survive sparsification") {
  // recs-cut-sets: every S with |S| <= k and in-cut at most the guess keeps
  // all its vertices out of the contraction in almost every run.
  SplitRng grng(83);
  WeightedDigraph g = random_edge_graph(10, 20, 6, grng);
  VertexId root = 0;
  std::int64_t k = 3;
  Rational lambda(10);

  // enumerate the qualifying sets once
  std::vector<unsigned> qualifying;
  for (unsigned code = 1; code < 512; ++code) {
    if (std::popcount(code) > k) continue;
    std::vector<bool> mask(10, false);
    for (int b = 0; b < 9; ++b)
      if (code & (1u << b)) mask[b + 1] = true;
    if (in_cut_weight(g, mask) <= lambda) qualifying.push_back(code);
  }
  REQUIRE(!qualifying.empty());

  int good = 0;
  const int seeds = 50;
  for (int seed = 0; seed < seeds; ++seed) {
    SparsifyParams p = params_for(Rational(1, 4), lambda, k, 3000 + seed);
    SparsifiedGraph s = sparsify_edge(g, root, p);
    bool ok = true;
    for (unsigned code : qualifying)
      for (int b = 0; b < 9 && ok; ++b)
        if ((code & (1u << b)) && s.orig_to_sparse[b + 1] < 0) ok = false;
    if (ok) good++;
  }
  CHECK(good >= seeds - 1);
}

TEST_CASE("deferred vertex sparsification matches fresh runs") {
  SplitRng grng(89);
  VertexWeightedDigraph g = random_vertex_graph(10, 22, 9, grng);
  SparsifyParams p = params_for(Rational(1, 4), Rational(5), 2, 4242);
  OpCounters counters;
  VertexSparsifyCore core = sparsify_vertex_deferred(g, p, &counters);
  std::uint64_t core_ops = counters.sparsify_item_ops;
  CHECK(core_ops >= g.edge_count());

  for (VertexId r = 0; r < 10; ++r) {
    SparsifiedVertexGraph s = attach_root(g, core, r, &counters);
    check_vertex_invariants(s, g);
  }
  // attachments are O(n) each, not O(m + n)
  CHECK(counters.attach_root_ops <= 10 * (10 + 5));
  CHECK(counters.sparsify_calls == 1);

  // distributional agreement with fresh sparsification: per-vertex mean
  // weight over many seeds should match closely.
  VertexId probe = 3, root = 0;
  const int seeds = 4000;
  double attach_total = 0, fresh_total = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    SparsifyParams q = params_for(Rational(1, 4), Rational(5), 2, 10000 + seed);
    VertexSparsifyCore c2 = sparsify_vertex_deferred(g, q);
    attach_total +=
        static_cast<double>(attach_root(g, c2, root).graph.weight(probe).num());
    fresh_total +=
        static_cast<double>(sparsify_vertex(g, root, q).graph.weight(probe).num());
  }
  double diff = std::abs(attach_total - fresh_total) / seeds;
  // both estimate w(probe)/tau; allow generous Monte Carlo slack
  CHECK(diff < 1.0);
}
