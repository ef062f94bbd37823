#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dircut/rational.hpp"

namespace dircut {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  VertexId tail;
  VertexId head;
  Rational weight;
};

// Immutable directed multigraph with positive rational edge weights.
// Parallel edges stay distinct (sparsification samples per edge and
// contraction multiplicity feeds the unweighted in-degree bounds);
// self-loops are dropped at construction since they never affect a cut.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  VertexId vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }

  Rational total_weight() const;
  Rational min_weight() const;  // zero on an edgeless graph

  // Construction entry point used by parsers and generators; validates ids
  // and positivity. `allow_zero_weight` exists for derived graphs only
  // (split graphs of sparsified vertex graphs).
  static WeightedDigraph build(VertexId n,
                               const std::vector<Edge>& edge_list,
                               bool allow_zero_weight = false);

 private:
  friend WeightedDigraph reverse(const WeightedDigraph&);

  void finish_adjacency();

  VertexId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// Directed graph with positive vertex weights (weight zero is permitted only
// in sparsified outputs; `build` rejects it, the internal constructor does
// not).
class VertexWeightedDigraph {
 public:
  VertexWeightedDigraph() = default;

  VertexId vertex_count() const { return n_; }
  std::size_t edge_count() const { return tails_.size(); }
  VertexId edge_tail(EdgeId e) const { return tails_[static_cast<std::size_t>(e)]; }
  VertexId edge_head(EdgeId e) const { return heads_[static_cast<std::size_t>(e)]; }
  const Rational& weight(VertexId v) const { return weights_[v]; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }

  Rational total_weight() const;
  Rational min_weight() const;

  static VertexWeightedDigraph build(
      VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
      const std::vector<Rational>& vertex_weights);

  // Sparsifier-only variant: permits zero weights.
  static VertexWeightedDigraph build_allow_zero(
      VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
      const std::vector<Rational>& vertex_weights);

 private:
  static VertexWeightedDigraph build_impl(
      VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
      const std::vector<Rational>& vertex_weights, bool allow_zero);

  VertexId n_ = 0;
  std::vector<VertexId> tails_;
  std::vector<VertexId> heads_;
  std::vector<Rational> weights_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

enum class CutKind { edge, vertex };

// A rooted cut: the sink component it isolates plus the cut elements and
// their exact weight re-evaluated in the graph the result refers to.
struct CutResult {
  CutKind kind = CutKind::edge;
  VertexId root = 0;
  std::vector<VertexId> sink_component;  // sorted, never contains root
  std::vector<EdgeId> cut_edges;         // edge variant, ids into the graph
  std::vector<VertexId> separator;       // vertex variant, sorted
  Rational weight;
};

// Vertex split bookkeeping: v maps to v- = in_vertex[v], v+ = out_vertex[v],
// and internal_edge[v] is the (v-, v+) edge carrying w(v) (-1 if w(v) = 0,
// in which case the edge is omitted as semantically absent).
struct SplitMapping {
  std::vector<VertexId> in_vertex;
  std::vector<VertexId> out_vertex;
  std::vector<EdgeId> internal_edge;
};

struct ContractionResult {
  WeightedDigraph graph;
  // old_to_new[v] = new id; absorbed vertices map to the root's new id.
  std::vector<VertexId> old_to_new;
  std::vector<VertexId> new_to_old;
  VertexId new_root = 0;
};

WeightedDigraph reverse(const WeightedDigraph& g);
VertexWeightedDigraph reverse(const VertexWeightedDigraph& g);

ContractionResult contract_into_root(const WeightedDigraph& g, VertexId root,
                                     const std::vector<bool>& absorbed);

// Split graph: edge (u,v) becomes (u+, v-) with capacity w(u), per the
// convention the local flow structures rely on.
std::pair<WeightedDigraph, SplitMapping> split_graph(
    const VertexWeightedDigraph& g);

// Total weight of edges entering `s` from outside. `in_set` must have size
// vertex_count.
Rational in_cut_weight(const WeightedDigraph& g, const std::vector<bool>& in_set);

struct VertexInCut {
  std::vector<VertexId> separator;  // sorted
  Rational weight;
};

// Vertex in-cut induced by the sink set `s`: the in-neighbors of s outside s,
// excluding the root. Returns nullopt when an edge runs directly from the
// root into s (no finite vertex cut has s as sink component).
std::optional<VertexInCut> vertex_in_cut(const VertexWeightedDigraph& g,
                                         VertexId root,
                                         const std::vector<bool>& s);

std::vector<bool> to_member_mask(VertexId n, const std::vector<VertexId>& ids);

// Exact re-evaluation of a sink component as a CutResult in g. These are the
// unconditional-soundness guards of the drivers: whatever randomized search
// proposed the sink set, the returned cut is rebuilt and weighed here.
CutResult make_edge_cut(const WeightedDigraph& g, VertexId root,
                        std::vector<VertexId> sink);
// Throws if the root has an edge straight into the sink set.
CutResult make_vertex_cut(const VertexWeightedDigraph& g, VertexId root,
                          std::vector<VertexId> sink);

// Validity checks used by tests and assertions.
bool cut_is_valid(const WeightedDigraph& g, const CutResult& cut);
bool cut_is_valid(const VertexWeightedDigraph& g, const CutResult& cut);

}  // namespace dircut
