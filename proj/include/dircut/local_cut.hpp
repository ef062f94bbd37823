#pragma once

#include <cstdint>
#include <vector>

#include "dircut/counters.hpp"
#include "dircut/sparsify.hpp"

namespace dircut {

// Answer to a sink-size-bounded (r,t) min-cut query. On the success branch
// the sink component is reported in original vertex ids and the weight is
// the rescaled sparsified-graph cut weight.
struct LocalQueryAnswer {
  bool above_threshold = true;
  std::vector<VertexId> sink_component;
  Rational weight;
  std::uint64_t iterations = 0;
  std::uint64_t arcs_traversed = 0;
  bool budget_exceeded = false;
};

// Residual network template: arcs come in even/odd pairs over merged ordered
// vertex pairs (even index = forward direction). Adjacency order is fixed at
// build time; queries copy the capacities, so a built structure is immutable
// and supports concurrent queries.
struct ResidualTemplate {
  int add_pair(VertexId x, VertexId y, std::int64_t cap_xy,
               std::int64_t cap_yx);
  void finish(VertexId node_count, bool internal_first);

  VertexId node_count() const {
    return static_cast<VertexId>(arcs_of_.size());
  }

  std::vector<VertexId> to_;
  std::vector<VertexId> tails_;
  std::vector<std::int64_t> cap_;
  std::vector<std::vector<int>> arcs_of_;  // out-arc ids per node
};

// Local (r,t) edge-cut oracle over the reversed sparsified graph:
// Ford-Fulkerson with unit augmentations, where any visit to a vertex whose
// auxiliary (v,root) arc still has residual completes the path at once.
class LocalEdgeCut {
 public:
  LocalEdgeCut(SparsifiedGraph sparsified, const SparsifyParams& user_params,
               OpCounters* counters = nullptr);

  LocalQueryAnswer query(VertexId t_original,
                         OpCounters* counters = nullptr) const;

  const SparsifiedGraph& sparsified() const { return sparse_; }
  std::int64_t iteration_cap() const { return iter_cap_; }
  std::int64_t filter_units() const { return filter_units_; }
  std::uint64_t edge_budget() const { return edge_budget_; }

  // Test hook: exceeding the per-search edge budget throws instead of
  // answering AboveThreshold.
  bool strict_budget = false;

 private:
  SparsifiedGraph sparse_;
  Rational user_eps_;
  ResidualTemplate net_;
  std::vector<int> aux_arc_;   // per sparse vertex, -1 for root
  std::vector<bool> is_aux_;   // per arc
  std::int64_t iter_cap_ = 0;
  std::int64_t filter_units_ = 0;
  std::uint64_t edge_budget_ = 0;
};

// Vertex analogue over the split graph of the reversed sparsified graph,
// with auxiliary paths collapsed to direct (v+, r-) escape arcs and the
// two-tier saturation rule on v+/v-.
class LocalVertexCut {
 public:
  LocalVertexCut(SparsifiedVertexGraph sparsified,
                 const SparsifyParams& user_params,
                 OpCounters* counters = nullptr);

  // t must lie in the original V' (not the root, not an out-neighbor of the
  // root in the input graph); anything else is rejected.
  LocalQueryAnswer query(VertexId t, OpCounters* counters = nullptr) const;

  const SparsifiedVertexGraph& sparsified() const { return sparse_; }
  std::int64_t iteration_cap() const { return iter_cap_; }
  std::int64_t filter_units() const { return filter_units_; }
  std::uint64_t edge_budget() const { return edge_budget_; }
  int escape_arc(VertexId v) const { return escape_arc_[v]; }
  std::int64_t escape_capacity(VertexId v) const {
    return escape_arc_[v] >= 0 ? net_.cap_[escape_arc_[v]] : 0;
  }

  bool strict_budget = false;

 private:
  VertexId in_node(VertexId v) const { return 2 * v; }
  VertexId out_node(VertexId v) const { return 2 * v + 1; }

  SparsifiedVertexGraph sparse_;
  Rational user_eps_;
  ResidualTemplate net_;
  std::vector<int> escape_arc_;         // per original vertex, -1 for root
  std::vector<int> internal_arc_;       // per original vertex, -1 if absent
  std::vector<VertexId> conn_head_;     // per arc: v of head v-, else -1
  std::vector<VertexId> escape_owner_;  // per arc: v of (v+, r-), else -1
  std::vector<VertexId> internal_owner_;
  std::int64_t iter_cap_ = 0;
  std::int64_t filter_units_ = 0;
  std::uint64_t edge_budget_ = 0;
  std::int64_t cap_inf_ = 0;
};

// Driver-facing builders: sparsify with (guess, k, c_eps * eps) and wrap the
// result in the query structure.
LocalEdgeCut build_local_ec(const WeightedDigraph& g, VertexId root,
                            const SparsifyParams& params,
                            OpCounters* counters = nullptr);
LocalVertexCut build_local_vc(const VertexWeightedDigraph& g, VertexId root,
                              const SparsifyParams& params,
                              OpCounters* counters = nullptr);

}  // namespace dircut
