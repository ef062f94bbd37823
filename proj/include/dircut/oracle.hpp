#pragma once

#include <optional>

#include "dircut/graph.hpp"
#include "dircut/maxflow.hpp"

namespace dircut {

// Exact reference algorithms. The flow-based oracles run n-1 max-flows; the
// brute-force enumerations are independent of the flow path entirely and
// exist so the two routes can check each other on small inputs.

CutResult exact_rooted_ec(const WeightedDigraph& g, VertexId root,
                          OpCounters* counters = nullptr);

// nullopt when V' is empty (the root dominates the graph; no vertex r-cut).
std::optional<CutResult> exact_rooted_vc(const VertexWeightedDigraph& g,
                                         VertexId root,
                                         OpCounters* counters = nullptr);

CutResult exact_global_ec(const WeightedDigraph& g,
                          OpCounters* counters = nullptr);

std::optional<CutResult> exact_global_vc(const VertexWeightedDigraph& g,
                                         OpCounters* counters = nullptr);

// Exhaustive minimum in-cut over all nonempty S not containing the root,
// via Gray-code incremental updates. Usable to n ~ 20.
CutResult brute_force_rooted_ec(const WeightedDigraph& g, VertexId root);

// Exhaustive vertex variant (direct evaluation per subset).
std::optional<CutResult> brute_force_rooted_vc(const VertexWeightedDigraph& g,
                                               VertexId root);

// lambda_{t,k} / kappa_{t,k}: minimum (r,t)-cut weight over sink components
// containing t with at most k vertices. nullopt when no such cut exists
// (vertex variant with root-adjacency everywhere). Guarded to n <= 20.
Rational sink_constrained_cut_ec(const WeightedDigraph& g, VertexId root,
                                 VertexId t, VertexId k);
std::optional<Rational> sink_constrained_cut_vc(const VertexWeightedDigraph& g,
                                                VertexId root, VertexId t,
                                                VertexId k);

}  // namespace dircut
