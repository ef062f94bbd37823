#pragma once

#include <optional>
#include <vector>

#include "dircut/counters.hpp"
#include "dircut/local_cut.hpp"
#include "dircut/maxflow.hpp"
#include "dircut/sparsify.hpp"

namespace dircut {

struct DriverConfig {
  Rational eps{1, 5};
  Rational fail_prob{1, 20};
  std::uint64_t seed = 0;
  SparsifyConstants constants;
  // Balance points between the local small-sink branch and the
  // flow-sampling big-sink branch; defaults are sqrt(n) eps^{4/3} (edge)
  // and eps sqrt(n) (vertex).
  std::optional<double> k_star_edge;
  std::optional<double> k_star_vertex;
  std::optional<Rational> guess_lo;
  std::optional<Rational> guess_hi;
};

struct GuessOutcome {
  Rational guess;
  std::int64_t k = 0;
  char branch = '?';  // 's' small-sink, 'b' big-sink, 'f' fallback
  std::optional<Rational> best_weight;
};

struct ApproxCutReport {
  std::optional<CutResult> best;
  bool no_cut = false;       // vertex variants: no finite cut exists
  bool degenerate = false;   // global vertex single-vertex convention
  Rational degenerate_weight;
  bool from_reversed = false;  // best cut was found in the reversed graph
  std::uint64_t candidates_examined = 0;
  std::vector<GuessOutcome> guesses;
  std::uint64_t seed = 0;
  OpCounters counters;
};

// --- parameterized branch algorithms -------------------------------------

std::optional<CutResult> rooted_ec_small_sink(
    const WeightedDigraph& g, VertexId root, const Rational& lambda_guess,
    std::int64_t k_guess, const DriverConfig& cfg, SplitRng rng,
    OpCounters* counters = nullptr);

std::optional<CutResult> rooted_ec_big_sink(
    const WeightedDigraph& g, VertexId root, const Rational& lambda_guess,
    std::int64_t k_guess, const DriverConfig& cfg, SplitRng rng,
    OpCounters* counters = nullptr);

std::optional<CutResult> rooted_vc_small_sink(
    const VertexWeightedDigraph& g, VertexId root, const Rational& kappa_guess,
    std::int64_t k_guess, const DriverConfig& cfg, SplitRng rng,
    OpCounters* counters = nullptr);

std::optional<CutResult> rooted_vc_big_sink(
    const VertexWeightedDigraph& g, VertexId root, const Rational& kappa_guess,
    std::int64_t k_guess, const DriverConfig& cfg, SplitRng rng,
    OpCounters* counters = nullptr);

// --- full drivers (guessing loops, balancing, re-evaluation) -------------

ApproxCutReport approx_rooted_ec(const WeightedDigraph& g, VertexId root,
                                 const DriverConfig& cfg);
ApproxCutReport approx_global_ec(const WeightedDigraph& g,
                                 const DriverConfig& cfg);
ApproxCutReport approx_rooted_vc(const VertexWeightedDigraph& g, VertexId root,
                                 const DriverConfig& cfg);
ApproxCutReport approx_global_vc(const VertexWeightedDigraph& g,
                                 const DriverConfig& cfg);

}  // namespace dircut
