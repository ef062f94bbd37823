#include "dircut/rooted_cut.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dircut {

namespace {

using i64 = std::int64_t;

constexpr std::uint64_t kTagEdgeRooted = 0x6563;
constexpr std::uint64_t kTagVertexRooted = 0x7663;
constexpr std::uint64_t kTagGlobalVertex = 0x6776;
constexpr std::uint64_t kTagCore = 0xC04E;
constexpr std::uint64_t kTagRoots = 0x0070;

Rational log_rational(double x) {
  double ln = std::log(std::max(x, 2.0));
  Rational r(std::llround(ln * 65536.0), 65536);
  return r < Rational(1) ? Rational(1) : r;
}

// Sampling rate scale: max(ln n, ln 1/fail_prob, 1).
Rational log_hat(VertexId n, const Rational& fail_prob) {
  Rational a = log_rational(static_cast<double>(n));
  Rational b = log_rational(1.0 / std::max(fail_prob.to_double(), 1e-9));
  return a < b ? b : a;
}

i64 sample_size(const DriverConfig& cfg, i64 pool_scale, i64 divisor,
                const Rational& lhat) {
  Rational s = cfg.constants.sample_c * Rational(std::max<i64>(pool_scale, 1)) *
               lhat / Rational(std::max<i64>(divisor, 1));
  return std::max<i64>(1, s.ceil());
}

std::vector<Rational> guess_grid(const Rational& lo, const Rational& hi) {
  if (!lo.positive()) throw std::invalid_argument("guess grid needs lo > 0");
  std::vector<Rational> grid;
  Rational g = lo;
  grid.push_back(g);
  while (g < hi && grid.size() < 80) {
    g = g * Rational(2);
    grid.push_back(g);
  }
  return grid;
}

std::vector<i64> k_grid(VertexId n) {
  std::vector<i64> ks;
  for (i64 k = 1; k <= 2 * static_cast<i64>(n); k *= 2) ks.push_back(k);
  return ks;
}

void merge_best(std::optional<CutResult>& best,
                const std::optional<CutResult>& cand) {
  if (cand && (!best || cand->weight < best->weight)) best = *cand;
}

// Uniform sampling from a pool with a work-deduplicating visitor; when the
// requested count covers the pool, every element is visited once.
template <typename F>
void sample_targets(const std::vector<VertexId>& pool, i64 want, SplitRng& rng,
                    F&& visit) {
  if (pool.empty()) return;
  if (want >= static_cast<i64>(pool.size())) {
    for (VertexId t : pool) visit(t);
    return;
  }
  std::set<VertexId> seen;
  for (i64 i = 0; i < want; ++i) {
    VertexId t = pool[rng.below(pool.size())];
    if (seen.insert(t).second) visit(t);
  }
}

std::vector<VertexId> eligible_sinks_of(const VertexWeightedDigraph& g,
                                        VertexId root) {
  std::vector<bool> excluded(g.vertex_count(), false);
  excluded[root] = true;
  for (EdgeId e : g.out_edges(root)) excluded[g.edge_head(e)] = true;
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!excluded[v]) pool.push_back(v);
  return pool;
}

double default_k_star_edge(VertexId n, const Rational& eps) {
  return std::sqrt(static_cast<double>(n)) *
         std::pow(eps.to_double(), 4.0 / 3.0);
}

double default_k_star_vertex(VertexId n, const Rational& eps) {
  return eps.to_double() * std::sqrt(static_cast<double>(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// Edge branches

std::optional<CutResult> rooted_ec_small_sink(const WeightedDigraph& g,
                                              VertexId root,
                                              const Rational& lambda_guess,
                                              i64 k_guess,
                                              const DriverConfig& cfg,
                                              SplitRng rng,
                                              OpCounters* counters) {
  VertexId n = g.vertex_count();
  Rational lhat = log_hat(n, cfg.fail_prob);
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < n; ++v)
    if (v != root) pool.push_back(v);

  std::optional<CutResult> best;
  for (i64 ell = 1; ell <= 2 * k_guess; ell *= 2) {
    SplitRng lrng = rng.split(static_cast<std::uint64_t>(ell));
    SparsifyParams params{cfg.eps, lambda_guess, ell, lrng.next(),
                          cfg.constants};
    LocalEdgeCut oracle = build_local_ec(g, root, params, counters);
    i64 want = sample_size(cfg, n, ell, lhat);
    sample_targets(pool, want, lrng, [&](VertexId t) {
      LocalQueryAnswer a = oracle.query(t, counters);
      if (a.above_threshold) return;
      if (counters) counters->candidates_examined++;
      merge_best(best, make_edge_cut(g, root, a.sink_component));
    });
  }
  return best;
}

std::optional<CutResult> rooted_ec_big_sink(const WeightedDigraph& g,
                                            VertexId root,
                                            const Rational& lambda_guess,
                                            i64 k_guess,
                                            const DriverConfig& cfg,
                                            SplitRng rng,
                                            OpCounters* counters) {
  VertexId n = g.vertex_count();
  Rational lhat = log_hat(n, cfg.fail_prob);
  SparsifyParams params{cfg.constants.c_eps * cfg.eps, lambda_guess, k_guess,
                        rng.next(), cfg.constants};
  SparsifiedGraph S = sparsify_edge(g, root, params, counters);
  if (S.degenerate) return std::nullopt;

  std::vector<VertexId> pool;  // sparse ids
  for (VertexId v = 0; v < static_cast<VertexId>(S.sparse_to_orig.size()); ++v)
    if (v != S.root) pool.push_back(v);
  if (pool.empty()) return std::nullopt;

  std::optional<CutResult> best;
  i64 want = sample_size(cfg, n, k_guess, lhat);
  sample_targets(pool, want, rng, [&](VertexId t) {
    FlowResult f = max_flow(S.graph, S.root, t, counters);
    std::vector<bool> src(S.graph.vertex_count(), false);
    for (VertexId v : f.source_side) src[v] = true;
    std::vector<VertexId> sink;
    for (VertexId v = 0; v < S.graph.vertex_count(); ++v)
      if (!src[v]) sink.push_back(S.sparse_to_orig[v]);
    if (counters) counters->candidates_examined++;
    merge_best(best, make_edge_cut(g, root, sink));
  });
  return best;
}

// ---------------------------------------------------------------------------
// Vertex branches

std::optional<CutResult> rooted_vc_small_sink(const VertexWeightedDigraph& g,
                                              VertexId root,
                                              const Rational& kappa_guess,
                                              i64 k_guess,
                                              const DriverConfig& cfg,
                                              SplitRng rng,
                                              OpCounters* counters) {
  std::vector<VertexId> pool = eligible_sinks_of(g, root);
  if (pool.empty()) return std::nullopt;
  Rational lhat = log_hat(g.vertex_count(), cfg.fail_prob);

  std::optional<CutResult> best;
  for (i64 ell = 1; ell <= 2 * k_guess; ell *= 2) {
    SplitRng lrng = rng.split(static_cast<std::uint64_t>(ell));
    SparsifyParams params{cfg.eps, kappa_guess, ell, lrng.next(),
                          cfg.constants};
    LocalVertexCut oracle = build_local_vc(g, root, params, counters);
    i64 want = sample_size(cfg, pool.size(), ell, lhat);
    sample_targets(pool, want, lrng, [&](VertexId t) {
      LocalQueryAnswer a = oracle.query(t, counters);
      if (a.above_threshold) return;
      if (counters) counters->candidates_examined++;
      merge_best(best, make_vertex_cut(g, root, a.sink_component));
    });
  }
  return best;
}

std::optional<CutResult> rooted_vc_big_sink(const VertexWeightedDigraph& g,
                                            VertexId root,
                                            const Rational& kappa_guess,
                                            i64 k_guess,
                                            const DriverConfig& cfg,
                                            SplitRng rng,
                                            OpCounters* counters) {
  std::vector<VertexId> pool = eligible_sinks_of(g, root);
  if (pool.empty()) return std::nullopt;
  Rational lhat = log_hat(g.vertex_count(), cfg.fail_prob);

  SparsifyParams params{cfg.constants.c_eps * cfg.eps, kappa_guess, k_guess,
                        rng.next(), cfg.constants};
  SparsifiedVertexGraph S = sparsify_vertex(g, root, params, counters);

  std::optional<CutResult> best;
  i64 want = sample_size(cfg, pool.size(), k_guess, lhat);
  sample_targets(pool, want, rng, [&](VertexId t) {
    if (S.rewired[t]) return;  // its cuts were destroyed by sparsification
    VertexFlowResult f = vertex_max_flow(S.graph, root, t, counters);
    std::vector<VertexId> sink;
    for (VertexId v : f.sink_component)
      if (v < S.original_n) sink.push_back(v);
    if (sink.empty()) return;
    if (counters) counters->candidates_examined++;
    merge_best(best, make_vertex_cut(g, root, sink));
  });
  return best;
}

// ---------------------------------------------------------------------------
// Full drivers

ApproxCutReport approx_rooted_ec(const WeightedDigraph& g, VertexId root,
                                 const DriverConfig& cfg) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("rooted cut needs n >= 2");
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");

  ApproxCutReport rep;
  rep.seed = cfg.seed;
  OpCounters& C = rep.counters;

  // Singleton-sink fallback: keeps the report sound whatever the random
  // branches do, and seeds the ascending guess loop's early exit.
  std::optional<CutResult> best;
  for (VertexId t = 0; t < n; ++t) {
    if (t == root) continue;
    C.candidates_examined++;
    merge_best(best, make_edge_cut(g, root, {t}));
  }
  rep.guesses.push_back({Rational(0), 1, 'f', best->weight});
  if (best->weight.is_zero() || g.edge_count() == 0) {
    rep.best = best;
    rep.candidates_examined = C.candidates_examined;
    return rep;
  }

  Rational lo = cfg.guess_lo.value_or(g.min_weight());
  Rational hi = cfg.guess_hi.value_or(g.total_weight());
  std::vector<Rational> guesses = guess_grid(lo, hi);
  std::vector<i64> ks = k_grid(n);
  double k_star = cfg.k_star_edge.value_or(default_k_star_edge(n, cfg.eps));

  for (std::size_t gi = 0; gi < guesses.size(); ++gi) {
    const Rational& lambda = guesses[gi];
    SplitRng grng = SplitRng(cfg.seed).split(kTagEdgeRooted).split(gi);
    // One small-sink run with the largest admissible k covers its whole
    // power-of-two window; the remaining grid goes to the flow branch.
    i64 k_small = 0;
    for (i64 k : ks)
      if (static_cast<double>(k) <= k_star) k_small = std::max(k_small, k);
    if (k_small > 0) {
      auto c = rooted_ec_small_sink(g, root, lambda, k_small, cfg,
                                    grng.split(1), &C);
      rep.guesses.push_back(
          {lambda, k_small, 's',
           c ? std::optional<Rational>(c->weight) : std::nullopt});
      merge_best(best, c);
    }
    for (i64 k : ks) {
      if (static_cast<double>(k) <= k_star) continue;
      auto c = rooted_ec_big_sink(g, root, lambda, k, cfg,
                                  grng.split(1000 + k), &C);
      rep.guesses.push_back(
          {lambda, k, 'b',
           c ? std::optional<Rational>(c->weight) : std::nullopt});
      merge_best(best, c);
    }
    if (best && best->weight <= lambda) break;  // the true window was covered
  }
  rep.best = best;
  rep.candidates_examined = C.candidates_examined;
  return rep;
}

ApproxCutReport approx_global_ec(const WeightedDigraph& g,
                                 const DriverConfig& cfg) {
  if (g.vertex_count() < 2)
    throw std::invalid_argument("global cut needs n >= 2");
  DriverConfig fwd_cfg = cfg;
  DriverConfig bwd_cfg = cfg;
  bwd_cfg.seed = SplitRng(cfg.seed).split(1).next();
  ApproxCutReport fwd = approx_rooted_ec(g, 0, fwd_cfg);
  ApproxCutReport bwd = approx_rooted_ec(reverse(g), 0, bwd_cfg);

  ApproxCutReport rep;
  rep.seed = cfg.seed;
  rep.counters = fwd.counters;
  rep.counters += bwd.counters;
  rep.candidates_examined = rep.counters.candidates_examined;
  rep.guesses = fwd.guesses;
  rep.guesses.insert(rep.guesses.end(), bwd.guesses.begin(),
                     bwd.guesses.end());
  if (fwd.best && (!bwd.best || fwd.best->weight <= bwd.best->weight)) {
    rep.best = fwd.best;
    return rep;
  }
  // A sink component T of reverse(g) is a source component of g: the same
  // edge ids cross into V \ T there, for any nominal root inside T.
  const CutResult& b = *bwd.best;
  std::vector<bool> in_t = to_member_mask(g.vertex_count(), b.sink_component);
  std::vector<VertexId> complement;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!in_t[v]) complement.push_back(v);
  rep.best = make_edge_cut(g, b.sink_component.front(), complement);
  rep.from_reversed = true;
  return rep;
}

ApproxCutReport approx_rooted_vc(const VertexWeightedDigraph& g, VertexId root,
                                 const DriverConfig& cfg) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("rooted cut needs n >= 2");
  if (root < 0 || root >= n) throw std::out_of_range("root out of range");

  ApproxCutReport rep;
  rep.seed = cfg.seed;
  OpCounters& C = rep.counters;
  std::vector<VertexId> pool = eligible_sinks_of(g, root);
  if (pool.empty()) {
    rep.no_cut = true;
    return rep;
  }

  std::optional<CutResult> best;
  for (VertexId t : pool) {
    C.candidates_examined++;
    merge_best(best, make_vertex_cut(g, root, {t}));
  }
  rep.guesses.push_back({Rational(0), 1, 'f', best->weight});
  if (best->weight.is_zero()) {
    rep.best = best;
    rep.candidates_examined = C.candidates_examined;
    return rep;
  }

  Rational lo = cfg.guess_lo.value_or(g.min_weight());
  Rational hi = cfg.guess_hi.value_or(g.total_weight());
  std::vector<Rational> guesses = guess_grid(lo, hi);
  std::vector<i64> ks = k_grid(n);
  double k_star =
      cfg.k_star_vertex.value_or(default_k_star_vertex(n, cfg.eps));

  for (std::size_t gi = 0; gi < guesses.size(); ++gi) {
    const Rational& kappa = guesses[gi];
    SplitRng grng = SplitRng(cfg.seed).split(kTagVertexRooted).split(gi);
    i64 k_small = 0;
    for (i64 k : ks)
      if (static_cast<double>(k) <= k_star) k_small = std::max(k_small, k);
    if (k_small > 0) {
      auto c = rooted_vc_small_sink(g, root, kappa, k_small, cfg,
                                    grng.split(1), &C);
      rep.guesses.push_back(
          {kappa, k_small, 's',
           c ? std::optional<Rational>(c->weight) : std::nullopt});
      merge_best(best, c);
    }
    for (i64 k : ks) {
      if (static_cast<double>(k) <= k_star) continue;
      auto c = rooted_vc_big_sink(g, root, kappa, k, cfg,
                                  grng.split(1000 + k), &C);
      rep.guesses.push_back(
          {kappa, k, 'b',
           c ? std::optional<Rational>(c->weight) : std::nullopt});
      merge_best(best, c);
    }
    if (best && best->weight <= kappa) break;
  }
  rep.best = best;
  rep.candidates_examined = C.candidates_examined;
  return rep;
}

ApproxCutReport approx_global_vc(const VertexWeightedDigraph& g,
                                 const DriverConfig& cfg) {
  VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("global cut needs n >= 2");

  ApproxCutReport rep;
  rep.seed = cfg.seed;
  OpCounters& C = rep.counters;
  Rational W = g.total_weight();

  // Degenerate convention: removing everything but the heaviest vertex.
  Rational max_w = g.weight(0);
  for (VertexId v = 0; v < n; ++v)
    if (g.weight(v) > max_w) max_w = g.weight(v);
  rep.degenerate_weight = W - max_w;

  // Singleton-sink fallback over all vertices (no root involved: a valid
  // global cut needs a nonempty outside).
  std::optional<CutResult> best;
  bool best_reversed = false;
  for (VertexId v = 0; v < n; ++v) {
    std::vector<bool> in_sep(n, false);
    for (EdgeId e : g.in_edges(v))
      if (g.edge_tail(e) != v) in_sep[g.edge_tail(e)] = true;
    VertexId outside = -1;
    for (VertexId u = 0; u < n && outside < 0; ++u)
      if (u != v && !in_sep[u]) outside = u;
    if (outside < 0) continue;
    C.candidates_examined++;
    merge_best(best, make_vertex_cut(g, outside, {v}));
  }

  VertexWeightedDigraph rev = reverse(g);
  Rational lo = cfg.guess_lo.value_or(g.min_weight());
  Rational hi = cfg.guess_hi.value_or(W);
  std::vector<Rational> guesses = guess_grid(lo, hi);
  std::vector<i64> ks = k_grid(n);
  double k_star =
      cfg.k_star_vertex.value_or(default_k_star_vertex(n, cfg.eps));
  Rational lhat = log_hat(n, cfg.fail_prob);
  Rational w_min = g.min_weight();

  i64 k_small = 0;
  for (i64 k : ks)
    if (static_cast<double>(k) <= k_star) k_small = std::max(k_small, k);
  std::vector<i64> params_needed;  // sparsifier k-values: ell window + big ks
  for (i64 ell = 1; k_small > 0 && ell <= 2 * k_small; ell *= 2)
    params_needed.push_back(ell);
  std::size_t small_param_count = params_needed.size();
  for (i64 k : ks)
    if (static_cast<double>(k) > k_star) params_needed.push_back(k);

  // Weight-proportional root sampling on an exact integer scale.
  std::vector<Rational> ws = g.weights();
  i64 scale = 1;
  for (const Rational& w : ws) scale = std::lcm(scale, w.den());
  std::vector<i64> prefix(n + 1, 0);
  for (VertexId v = 0; v < n; ++v)
    prefix[v + 1] = prefix[v] + ws[v].num() * (scale / ws[v].den());
  i64 total_scaled = prefix[n];

  for (std::size_t gi = 0; gi < guesses.size(); ++gi) {
    const Rational& kappa = guesses[gi];
    SplitRng grng = SplitRng(cfg.seed).split(kTagGlobalVertex).split(gi);

    // One deferred core per (orientation, sparsifier-k); shared across all
    // sampled roots for this guess.
    std::map<std::pair<int, i64>, VertexSparsifyCore> cores;
    auto core_of = [&](int orient, i64 p) -> const VertexSparsifyCore& {
      auto key = std::make_pair(orient, p);
      auto it = cores.find(key);
      if (it == cores.end()) {
        SparsifyParams params{
            cfg.constants.c_eps * cfg.eps, kappa, p,
            SplitRng(cfg.seed)
                .split(kTagCore)
                .split(gi)
                .split(static_cast<std::uint64_t>(orient))
                .split(static_cast<std::uint64_t>(p))
                .next(),
            cfg.constants};
        it = cores.emplace(key, sparsify_vertex_deferred(
                                    orient == 0 ? g : rev, params, &C))
                 .first;
      }
      return it->second;
    };

    SplitRng root_rng = grng.split(kTagRoots);
    std::set<VertexId> tried_roots;
    i64 processed = 0;
    auto target = [&]() {
      Rational khat = best ? best->weight : rep.degenerate_weight;
      Rational denom = W - khat;
      if (denom < w_min) denom = w_min;
      i64 t = (cfg.constants.sample_c * W * lhat / denom).ceil();
      i64 cap = (cfg.constants.sample_c * Rational(n) * lhat).ceil();
      return std::max<i64>(1, std::min(t, cap));
    };

    while (processed < target()) {
      processed++;
      i64 draw = static_cast<i64>(
          root_rng.below(static_cast<std::uint64_t>(total_scaled)));
      VertexId r = static_cast<VertexId>(
          std::upper_bound(prefix.begin(), prefix.end(), draw) -
          prefix.begin() - 1);
      if (!tried_roots.insert(r).second) continue;

      for (int orient = 0; orient < 2; ++orient) {
        const VertexWeightedDigraph& G = orient == 0 ? g : rev;
        std::vector<VertexId> pool = eligible_sinks_of(G, r);
        if (pool.empty()) continue;
        SplitRng orng = grng.split(0x9000 + orient).split(r);

        for (std::size_t pi = 0; pi < params_needed.size(); ++pi) {
          i64 p = params_needed[pi];
          bool small_branch = pi < small_param_count;
          SparsifiedVertexGraph S = attach_root(G, core_of(orient, p), r, &C);
          SplitRng prng = orng.split(pi);
          std::optional<CutResult> found;
          if (small_branch) {
            SparsifyParams user_params{cfg.eps, kappa, p, 0, cfg.constants};
            LocalVertexCut oracle(std::move(S), user_params, &C);
            i64 want = sample_size(cfg, pool.size(), p, lhat);
            sample_targets(pool, want, prng, [&](VertexId t) {
              LocalQueryAnswer a = oracle.query(t, &C);
              if (a.above_threshold) return;
              C.candidates_examined++;
              merge_best(found, make_vertex_cut(G, r, a.sink_component));
            });
          } else {
            i64 want = sample_size(cfg, pool.size(), p, lhat);
            sample_targets(pool, want, prng, [&](VertexId t) {
              if (S.rewired[t]) return;
              VertexFlowResult f = vertex_max_flow(S.graph, r, t, &C);
              std::vector<VertexId> sink;
              for (VertexId v : f.sink_component)
                if (v < S.original_n) sink.push_back(v);
              if (sink.empty()) return;
              C.candidates_examined++;
              merge_best(found, make_vertex_cut(G, r, sink));
            });
          }
          if (found && (!best || found->weight < best->weight)) {
            best = found;
            best_reversed = orient == 1;
          }
        }
      }
    }
    rep.guesses.push_back(
        {kappa, k_small, 'g',
         best ? std::optional<Rational>(best->weight) : std::nullopt});
    if (best && best->weight <= kappa) break;
  }

  if (!best) {
    rep.no_cut = true;
    rep.degenerate = true;
  } else {
    rep.best = best;
    rep.from_reversed = best_reversed;
  }
  rep.candidates_examined = C.candidates_examined;
  return rep;
}

}  // namespace dircut
