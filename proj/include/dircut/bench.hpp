#pragma once

#include <string>
#include <vector>

#include "dircut/graph.hpp"
#include "dircut/rng.hpp"
#include "dircut/rooted_cut.hpp"

namespace dircut {

// Deterministic instance families for tests and the bench harness.

// Hamiltonian cycle plus `extra` random edges, integer weights in [1, wmax].
WeightedDigraph random_edge_graph(VertexId n, std::size_t extra,
                                  std::int64_t wmax, SplitRng& rng);

// Random digraph with positive vertex weights in [1, wmax].
VertexWeightedDigraph random_vertex_graph(VertexId n, std::size_t extra,
                                          std::int64_t wmax, SplitRng& rng);

// Random heavy graph with a planted sink component of `plant_size` vertices
// whose in-cut is exactly `planted_edges` unit edges; the minimum rooted cut
// from vertex 0.
WeightedDigraph planted_sink_graph(VertexId n, VertexId plant_size,
                                   std::size_t extra, int planted_edges,
                                   SplitRng& rng);

// Layered DAG with heavy back edges closing the cycle.
WeightedDigraph layered_graph(VertexId n, int layers, std::int64_t wmax,
                              SplitRng& rng);

struct BenchRow {
  std::string family;
  VertexId n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  Rational weight;
  std::uint64_t edge_traversals = 0;
  std::uint64_t dinic_calls = 0;
  std::uint64_t local_queries = 0;
  std::uint64_t local_iterations = 0;
  double elapsed_ms = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double fit_exponent = 0;  // least-squares slope of log(traversals) vs log n
};

// Runs the full edge-connectivity pipeline per size/trial and fits the
// growth exponent of instrumented edge traversals.
BenchResult run_bench(const std::string& family, const std::vector<VertexId>& sizes,
                      int trials, const DriverConfig& cfg, VertexId plant_size);

}  // namespace dircut
