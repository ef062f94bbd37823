#include "dircut/bench.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dircut {

namespace {

std::int64_t uniform_weight(SplitRng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace

WeightedDigraph random_edge_graph(VertexId n, std::size_t extra,
                                  std::int64_t wmax, SplitRng& rng) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v)
    edges.push_back(
        {v, static_cast<VertexId>((v + 1) % n),
         Rational(uniform_weight(rng, 1, wmax))});
  for (std::size_t i = 0; i < extra; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    edges.push_back({u, v, Rational(uniform_weight(rng, 1, wmax))});
  }
  return WeightedDigraph::build(n, edges);
}

VertexWeightedDigraph random_vertex_graph(VertexId n, std::size_t extra,
                                          std::int64_t wmax, SplitRng& rng) {
  std::vector<Rational> weights;
  for (VertexId v = 0; v < n; ++v)
    weights.push_back(Rational(uniform_weight(rng, 1, wmax)));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v < n; ++v)
    edges.push_back({v, static_cast<VertexId>((v + 1) % n)});
  for (std::size_t i = 0; i < extra; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    edges.push_back({u, v});
  }
  return VertexWeightedDigraph::build(n, edges, weights);
}

WeightedDigraph planted_sink_graph(VertexId n, VertexId plant_size,
                                   std::size_t extra, int planted_edges,
                                   SplitRng& rng) {
  if (plant_size < 1 || plant_size >= n - 1)
    throw std::invalid_argument("plant size out of range");
  VertexId outside = n - plant_size;  // vertices 0..outside-1
  std::vector<Edge> edges;
  // Heavy cycle through the outside part and through the planted sink.
  for (VertexId v = 0; v < outside; ++v)
    edges.push_back({v, static_cast<VertexId>((v + 1) % outside),
                     Rational(uniform_weight(rng, 8, 20))});
  for (VertexId i = 0; i < plant_size; ++i)
    edges.push_back({static_cast<VertexId>(outside + i),
                     static_cast<VertexId>(outside + (i + 1) % plant_size),
                     Rational(uniform_weight(rng, 8, 20))});
  // The planted light in-cut, and heavy escapes back to the outside.
  for (int i = 0; i < planted_edges; ++i)
    edges.push_back({static_cast<VertexId>(rng.below(outside)),
                     static_cast<VertexId>(outside + rng.below(plant_size)),
                     Rational(1)});
  for (VertexId i = 0; i < std::min<VertexId>(plant_size, 3); ++i)
    edges.push_back({static_cast<VertexId>(outside + i),
                     static_cast<VertexId>(rng.below(outside)),
                     Rational(uniform_weight(rng, 8, 20))});
  // Extra heavy edges that never enter the planted sink.
  for (std::size_t i = 0; i < extra; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId v = static_cast<VertexId>(rng.below(outside));
    if (u == v) continue;
    edges.push_back({u, v, Rational(uniform_weight(rng, 8, 20))});
  }
  return WeightedDigraph::build(n, edges);
}

WeightedDigraph layered_graph(VertexId n, int layers, std::int64_t wmax,
                              SplitRng& rng) {
  if (layers < 2) throw std::invalid_argument("need at least 2 layers");
  std::vector<Edge> edges;
  VertexId per = std::max<VertexId>(1, n / layers);
  auto layer_of = [&](VertexId v) { return std::min<int>(v / per, layers - 1); };
  for (VertexId v = 0; v < n; ++v) {
    int l = layer_of(v);
    // two forward edges into the next layer (wrapping to layer 0 as the
    // heavy back edge closing the cycle)
    for (int j = 0; j < 2; ++j) {
      int nl = (l + 1) % layers;
      VertexId lo = static_cast<VertexId>(nl * per);
      VertexId hi = nl == layers - 1 ? n : std::min<VertexId>(n, lo + per);
      if (lo >= hi) continue;
      VertexId u = lo + static_cast<VertexId>(rng.below(hi - lo));
      if (u == v) continue;
      edges.push_back({v, u, Rational(uniform_weight(rng, 1, wmax))});
    }
  }
  return WeightedDigraph::build(n, edges);
}

BenchResult run_bench(const std::string& family,
                      const std::vector<VertexId>& sizes, int trials,
                      const DriverConfig& cfg, VertexId plant_size) {
  BenchResult result;
  for (VertexId n : sizes) {
    for (int trial = 0; trial < trials; ++trial) {
      SplitRng grng =
          SplitRng(cfg.seed).split(0xBE0C).split(n).split(trial);
      WeightedDigraph g;
      if (family == "random") {
        g = random_edge_graph(n, 4 * static_cast<std::size_t>(n), 20, grng);
      } else if (family == "planted") {
        g = planted_sink_graph(n, plant_size,
                               4 * static_cast<std::size_t>(n), 3, grng);
      } else if (family == "layered") {
        g = layered_graph(n, 8, 20, grng);
      } else {
        throw std::invalid_argument("unknown bench family: " + family);
      }
      DriverConfig run_cfg = cfg;
      run_cfg.seed = SplitRng(cfg.seed).split(n).split(trial).next();
      auto start = std::chrono::steady_clock::now();
      ApproxCutReport rep = approx_rooted_ec(g, 0, run_cfg);
      auto stop = std::chrono::steady_clock::now();

      BenchRow row;
      row.family = family;
      row.n = n;
      row.trial = trial;
      row.seed = run_cfg.seed;
      row.weight = rep.best ? rep.best->weight : Rational(0);
      row.edge_traversals = rep.counters.pipeline_edge_traversals();
      row.dinic_calls = rep.counters.dinic_calls;
      row.local_queries = rep.counters.local_queries;
      row.local_iterations = rep.counters.local_iterations;
      row.elapsed_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
      result.rows.push_back(row);
    }
  }

  // Least-squares slope of log(mean traversals per size) against log n.
  std::vector<double> xs, ys;
  for (VertexId n : sizes) {
    double sum = 0;
    int count = 0;
    for (const BenchRow& row : result.rows)
      if (row.n == n) {
        sum += static_cast<double>(row.edge_traversals);
        count++;
      }
    if (count == 0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(sum / count));
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    result.fit_exponent = den > 0 ? num / den : 0;
  }
  return result;
}

}  // namespace dircut
