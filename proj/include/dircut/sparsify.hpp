#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dircut/counters.hpp"
#include "dircut/graph.hpp"
#include "dircut/rational.hpp"
#include "dircut/rng.hpp"

namespace dircut {

// Tuning constants. The defaults are calibrated so the statistical
// acceptance thresholds pass at desk scale; smaller c_tau buys tighter
// concentration at the cost of denser sparsified graphs.
struct SparsifyConstants {
  Rational c_tau{1, 64};
  Rational c_delta{16};
  Rational c_w{8};
  // Lower clamp on truncated cut weights, as a multiple of the guess. The
  // truncation cap is max(c_w k log n / eps^2, c_zero * guess / tau) so cuts
  // never drop below c_zero * guess.
  Rational c_zero{2};
  // Internal epsilon shrink applied where the drivers hand a budget to the
  // sparsifier ("c eps").
  Rational c_eps{3, 4};
  // Sample-count multiplier for the drivers.
  Rational sample_c{3};
  // Local search edge budget multiplier.
  Rational budget_c{16};
};

struct SparsifyParams {
  Rational eps;           // in (0,1)
  Rational guess;         // lambda or kappa estimate
  std::int64_t k_guess;   // sink-component size estimate, >= 1
  std::uint64_t seed = 0;
  SparsifyConstants constants;
};

// Quantities derived from the params for a graph on n vertices. tau divides
// both the guess and eps*guess/(2k) exactly; it is adjusted downward from
// the nominal c_tau eps^2 guess / (k log n) to the nearest exact divisor.
struct SparsifyDerived {
  Rational tau;
  Rational log_n;             // max(ln n, 1), rationalized
  std::int64_t aux_units;     // (eps*guess/2k)/tau, the auxiliary weight
  std::int64_t guess_units;   // guess/tau
  std::int64_t cap_units;     // truncation cap
  std::int64_t delta;         // in-degree contraction threshold

  static SparsifyDerived compute(VertexId n, const SparsifyParams& params);
};

struct SparsifiedGraph {
  WeightedDigraph graph;  // integer weights, in tau units
  Rational tau;
  VertexId root = 0;                    // id in `graph`
  std::vector<EdgeId> aux_edge;         // per sparse vertex, -1 for root
  std::vector<VertexId> orig_to_sparse; // -1 if contracted into root
  std::vector<VertexId> sparse_to_orig;
  SparsifyDerived derived;
  bool degenerate = false;  // every non-root vertex was contracted
};

struct SparsifiedVertexGraph {
  VertexWeightedDigraph graph;  // integer weights; includes auxiliary vertices
  Rational tau;
  VertexId root = 0;
  VertexId original_n = 0;          // originals keep ids 0..original_n-1
  std::vector<VertexId> aux_vertex; // v -> a_v, -1 for root/rewired
  std::vector<bool> rewired;        // in-edges replaced by a root edge
  std::vector<bool> eligible_sink;  // original V' = V minus {r} and N+(r)
  SparsifyDerived derived;
};

// Randomized rounding of w to a multiple of tau: tau*(floor(w/tau) + B) with
// B ~ Bernoulli(frac(w/tau)). Exact expectation w; error at most tau.
Rational importance_round(const Rational& w, const Rational& tau,
                          SplitRng& rng);

SparsifiedGraph sparsify_edge(const WeightedDigraph& g, VertexId root,
                              const SparsifyParams& params,
                              OpCounters* counters = nullptr);

SparsifiedVertexGraph sparsify_vertex(const VertexWeightedDigraph& g,
                                      VertexId root,
                                      const SparsifyParams& params,
                                      OpCounters* counters = nullptr);

// Root-independent portion of the vertex sparsifier, reusable across many
// roots; attach_root finishes the job in O(n + deg(root)) work.
struct VertexSparsifyCore {
  SparsifyParams params;
  SparsifyDerived derived;
  VertexId n = 0;
  std::vector<std::int64_t> units;         // sampled + truncated weights
  std::vector<bool> zero_stripped;
  std::vector<bool> rewire_flag;           // in-degree >= delta
  std::vector<std::pair<VertexId, VertexId>> kept_edges;
  // Out-edges removed from zero-weight vertices, per tail; restored when
  // that vertex becomes the root.
  std::vector<std::vector<VertexId>> stripped_out;
};

VertexSparsifyCore sparsify_vertex_deferred(const VertexWeightedDigraph& g,
                                            const SparsifyParams& params,
                                            OpCounters* counters = nullptr);

SparsifiedVertexGraph attach_root(const VertexWeightedDigraph& g,
                                  const VertexSparsifyCore& core,
                                  VertexId root,
                                  OpCounters* counters = nullptr);

}  // namespace dircut
