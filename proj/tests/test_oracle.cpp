#include "doctest.h"
#include "dircut/oracle.hpp"
#include "test_support.hpp"

using namespace dircut;
using namespace test_support;

TEST_CASE("exact_rooted_ec basics") {
  WeightedDigraph g = make_graph(2, {{0, 1, Rational(5)}});
  CHECK(exact_rooted_ec(g, 0).weight == Rational(5));

  WeightedDigraph fork =
      make_graph(3, {{0, 1, Rational(1)}, {0, 2, Rational(2)}});
  CutResult cut = exact_rooted_ec(fork, 0);
  CHECK(cut.weight == Rational(1));
  CHECK(cut.sink_component == std::vector<VertexId>{1});
}

TEST_CASE("exact_rooted_ec agrees with Gray-code enumeration") {
  SplitRng rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    VertexId n = 6 + static_cast<VertexId>(rng.below(7));  // up to 12
    WeightedDigraph g =
        random_edge_graph(n, 2 * static_cast<std::size_t>(n), 9, rng);
    VertexId root = static_cast<VertexId>(rng.below(n));
    CutResult flow = exact_rooted_ec(g, root);
    CutResult brute = brute_force_rooted_ec(g, root);
    CHECK(flow.weight == brute.weight);
    CHECK(cut_is_valid(g, flow));
    CHECK(cut_is_valid(g, brute));
  }
}

TEST_CASE("exact_rooted_vc basics and enumeration agreement") {
  VertexWeightedDigraph path =
      make_vertex_graph(3, {{0, 1}, {1, 2}}, {1, 3, 1});
  auto cut = exact_rooted_vc(path, 0);
  REQUIRE(cut.has_value());
  CHECK(cut->separator == std::vector<VertexId>{1});

  // complete digraph: no vertex cut from any root
  std::vector<std::pair<VertexId, VertexId>> complete;
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = 0; v < 4; ++v)
      if (u != v) complete.push_back({u, v});
  VertexWeightedDigraph k4 = make_vertex_graph(4, complete, {1, 1, 1, 1});
  CHECK_FALSE(exact_rooted_vc(k4, 0).has_value());
  CHECK_FALSE(exact_global_vc(k4).has_value());

  SplitRng rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    VertexId n = 6 + static_cast<VertexId>(rng.below(5));  // up to 10
    VertexWeightedDigraph g =
        random_vertex_graph(n, 2 * static_cast<std::size_t>(n), 9, rng);
    VertexId root = static_cast<VertexId>(rng.below(n));
    auto flow = exact_rooted_vc(g, root);
    auto brute = brute_force_rooted_vc(g, root);
    REQUIRE(flow.has_value() == brute.has_value());
    if (flow) {
      CHECK(flow->weight == brute->weight);
      CHECK(cut_is_valid(g, *flow));
    }
  }
}

TEST_CASE("exact global cuts") {
  // directed 3-cycle with weights 1,2,3: global ec = 1
  WeightedDigraph cyc = make_graph(
      3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}, {2, 0, Rational(3)}});
  CHECK(exact_global_ec(cyc).weight == Rational(1));

  // two 3-cliques joined through one light vertex in both directions
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto clique = [&](std::vector<VertexId> vs) {
    for (VertexId u : vs)
      for (VertexId v : vs)
        if (u != v) edges.push_back({u, v});
  };
  clique({0, 1, 2});
  clique({4, 5, 6});
  edges.push_back({2, 3});
  edges.push_back({3, 4});
  edges.push_back({4, 3});
  edges.push_back({3, 2});
  VertexWeightedDigraph joined =
      make_vertex_graph(7, edges, {5, 5, 5, 2, 5, 5, 5});
  auto gvc = exact_global_vc(joined);
  REQUIRE(gvc.has_value());
  CHECK(gvc->weight == Rational(2));
  CHECK(gvc->separator == std::vector<VertexId>{3});

  // strongly connected random graphs: global = min over roots via rooted
  SplitRng rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    WeightedDigraph g = random_edge_graph(8, 16, 9, rng);
    Rational best = exact_rooted_ec(g, 0).weight;
    Rational rev_best = exact_rooted_ec(reverse(g), 0).weight;
    Rational global = exact_global_ec(g).weight;
    CHECK(global == (best < rev_best ? best : rev_best));
    // every subset's in-cut upper-bounds the global cut
    CutResult c = exact_global_ec(g);
    CHECK(cut_is_valid(g, c));
  }
}

TEST_CASE("sink_constrained_cut") {
  SplitRng rng(59);
  WeightedDigraph g = random_edge_graph(8, 14, 9, rng);

  // k = 1: the in-cut of {t}
  for (VertexId t = 1; t < 8; ++t) {
    std::vector<bool> s(8, false);
    s[t] = true;
    CHECK(sink_constrained_cut_ec(g, 0, t, 1) == in_cut_weight(g, s));
  }
  // k = n-1: unconstrained (r,t) min cut
  for (VertexId t = 1; t < 8; ++t)
    CHECK(sink_constrained_cut_ec(g, 0, t, 7) == max_flow(g, 0, t).value);
  // monotone nonincreasing in k
  for (VertexId t = 1; t < 8; ++t) {
    Rational prev = sink_constrained_cut_ec(g, 0, t, 1);
    for (VertexId k = 2; k < 8; ++k) {
      Rational cur = sink_constrained_cut_ec(g, 0, t, k);
      CHECK(cur <= prev);
      prev = cur;
    }
  }

  // vertex variant with the same structure
  VertexWeightedDigraph vg = random_vertex_graph(7, 12, 9, rng);
  for (VertexId t = 1; t < 7; ++t) {
    auto k1 = sink_constrained_cut_vc(vg, 0, t, 1);
    std::vector<bool> s(7, false);
    s[t] = true;
    auto direct = vertex_in_cut(vg, 0, s);
    CHECK(k1.has_value() == direct.has_value());
    if (k1) CHECK(*k1 == direct->weight);
  }

  WeightedDigraph big = random_edge_graph(21, 30, 5, rng);
  CHECK_THROWS_AS(sink_constrained_cut_ec(big, 0, 1, 2),
                  std::invalid_argument);
}
