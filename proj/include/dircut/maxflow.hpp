#pragma once

#include <cstdint>
#include <vector>

#include "dircut/counters.hpp"
#include "dircut/graph.hpp"

namespace dircut {

// Exact (s,t) max-flow / min-cut result. The returned cut is the
// source-side-minimal one: `source_side` is the set of vertices reachable
// from s in the final residual graph, and `min_cut_edges` are exactly the
// saturated edges leaving it, so value == cut weight by construction (this
// is asserted on every call).
struct FlowResult {
  Rational value;
  std::vector<VertexId> source_side;   // sorted, contains s
  std::vector<EdgeId> min_cut_edges;   // ids into the input graph
};

// Vertex-capacitated variant, mapped back from the split graph. The
// separator never contains s or t; `sink_component` is the set of vertices
// unreachable from s once the separator is removed (contains t).
struct VertexFlowResult {
  Rational value;
  std::vector<VertexId> separator;       // sorted
  std::vector<VertexId> sink_component;  // sorted
};

// Dinic's algorithm (BFS level graph + blocking flow). Deterministic for a
// fixed input. Rational capacities are scaled to a common denominator.
FlowResult max_flow(const WeightedDigraph& g, VertexId s, VertexId t,
                    OpCounters* counters = nullptr);

// Minimum (s,t) vertex cut via the split graph. Requires s != t and no
// (s,t) edge (otherwise no finite vertex cut exists and the call throws).
VertexFlowResult vertex_max_flow(const VertexWeightedDigraph& g, VertexId s,
                                 VertexId t, OpCounters* counters = nullptr);

}  // namespace dircut
