#pragma once

#include <cstdint>

namespace dircut {

// Operation counters threaded through the flow and sampling machinery.
// Counter values are a deterministic function of (input, params, seed).
struct OpCounters {
  std::uint64_t sparsify_calls = 0;
  std::uint64_t sparsify_item_ops = 0;  // edges/vertices touched by sparsify
  std::uint64_t attach_root_ops = 0;    // work done by deferred attachments
  std::uint64_t dinic_calls = 0;
  std::uint64_t flow_arc_traversals = 0;
  std::uint64_t flow_augmentations = 0;
  std::uint64_t local_builds = 0;
  std::uint64_t local_queries = 0;
  std::uint64_t local_iterations = 0;
  std::uint64_t local_arc_traversals = 0;
  std::uint64_t candidates_examined = 0;

  std::uint64_t pipeline_edge_traversals() const {
    return sparsify_item_ops + flow_arc_traversals + local_arc_traversals;
  }

  OpCounters& operator+=(const OpCounters& o) {
    sparsify_calls += o.sparsify_calls;
    sparsify_item_ops += o.sparsify_item_ops;
    attach_root_ops += o.attach_root_ops;
    dinic_calls += o.dinic_calls;
    flow_arc_traversals += o.flow_arc_traversals;
    flow_augmentations += o.flow_augmentations;
    local_builds += o.local_builds;
    local_queries += o.local_queries;
    local_iterations += o.local_iterations;
    local_arc_traversals += o.local_arc_traversals;
    candidates_examined += o.candidates_examined;
    return *this;
  }
};

}  // namespace dircut
