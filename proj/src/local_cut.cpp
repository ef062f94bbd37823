#include "dircut/local_cut.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dircut {

namespace {

using i64 = std::int64_t;

i64 integral_weight(const Rational& w) {
  if (!w.is_integer())
    throw std::logic_error("sparsified weight is not integral: " + w.str());
  return w.num();
}

struct Budgets {
  i64 iter_cap;
  i64 filter_units;
  std::uint64_t edge_budget;
};

// The iteration cap must allow certifying the success filter: stopping at
// `cap` iterations proves the minimum cut exceeds filter_units.
Budgets compute_budgets(const SparsifyParams& user_params,
                        const SparsifyDerived& d) {
  Rational eps = user_params.eps;
  Rational eps_inner = user_params.constants.c_eps * eps;
  Rational k(user_params.k_guess);
  Budgets b;
  b.filter_units =
      ((Rational(1) + eps / Rational(2)) * Rational(d.guess_units)).floor();
  b.iter_cap =
      std::max((Rational(4) * user_params.constants.c_w * k * d.log_n /
                (eps_inner * eps_inner))
                   .ceil(),
               b.filter_units + 1);
  b.edge_budget = static_cast<std::uint64_t>(
      (user_params.constants.budget_c * k * k * d.log_n /
       (eps_inner * eps_inner))
          .ceil());
  return b;
}

}  // namespace

int ResidualTemplate::add_pair(VertexId x, VertexId y, std::int64_t cap_xy,
                               std::int64_t cap_yx) {
  int a = static_cast<int>(to_.size());
  to_.push_back(y);
  cap_.push_back(cap_xy);
  tails_.push_back(x);
  to_.push_back(x);
  cap_.push_back(cap_yx);
  tails_.push_back(y);
  return a;
}

void ResidualTemplate::finish(VertexId node_count, bool internal_first) {
  arcs_of_.assign(node_count, {});
  for (int a = 0; a < static_cast<int>(to_.size()); ++a)
    arcs_of_[tails_[a]].push_back(a);
  for (VertexId v = 0; v < node_count; ++v) {
    std::sort(arcs_of_[v].begin(), arcs_of_[v].end(), [&](int a, int b) {
      // Searches expand arcs in ascending head-id order; the vertex variant
      // walks the split edge (v-, v+) before anything else.
      bool ia = internal_first && v % 2 == 0 && to_[a] == v + 1;
      bool ib = internal_first && v % 2 == 0 && to_[b] == v + 1;
      if (ia != ib) return ia;
      if (to_[a] != to_[b]) return to_[a] < to_[b];
      return a < b;
    });
  }
}

// ---------------------------------------------------------------------------
// Edge variant

LocalEdgeCut::LocalEdgeCut(SparsifiedGraph sparsified,
                           const SparsifyParams& user_params,
                           OpCounters* counters)
    : sparse_(std::move(sparsified)), user_eps_(user_params.eps) {
  if (counters) counters->local_builds++;
  Budgets b = compute_budgets(user_params, sparse_.derived);
  iter_cap_ = b.iter_cap;
  filter_units_ = b.filter_units;
  edge_budget_ = b.edge_budget;

  const WeightedDigraph& g = sparse_.graph;
  VertexId n = g.vertex_count();

  // Reversed sparsified graph with arcs merged per ordered vertex pair.
  std::map<std::pair<VertexId, VertexId>, i64> agg;
  for (const Edge& e : g.edges())
    agg[{e.head, e.tail}] += integral_weight(e.weight);

  std::map<std::pair<VertexId, VertexId>, int> arc_of;
  for (const auto& [key, cap] : agg) {
    if (arc_of.count(key)) continue;
    auto mirror = std::make_pair(key.second, key.first);
    auto back_it = agg.find(mirror);
    i64 back = back_it == agg.end() ? 0 : back_it->second;
    int a = net_.add_pair(key.first, key.second, cap, back);
    arc_of[key] = a;
    arc_of[mirror] = a + 1;
  }

  aux_arc_.assign(n, -1);
  is_aux_.assign(net_.cap_.size(), false);
  for (VertexId v = 0; v < n; ++v) {
    if (v == sparse_.root) continue;
    auto it = arc_of.find({v, sparse_.root});
    if (it == arc_of.end())
      throw std::logic_error("sparsified graph lacks an auxiliary edge");
    aux_arc_[v] = it->second;
    is_aux_[it->second] = true;
  }
  net_.finish(n, false);
}

LocalQueryAnswer LocalEdgeCut::query(VertexId t_original,
                                     OpCounters* counters) const {
  if (counters) counters->local_queries++;
  LocalQueryAnswer ans;
  if (t_original < 0 ||
      t_original >= static_cast<VertexId>(sparse_.orig_to_sparse.size()))
    throw std::out_of_range("query target out of range");
  if (sparse_.degenerate) return ans;
  VertexId t = sparse_.orig_to_sparse[t_original];
  if (t == sparse_.root)
    throw std::invalid_argument("query target equals the root");
  if (t < 0) return ans;  // contracted away: above threshold

  const VertexId root = sparse_.root;
  const VertexId n = net_.node_count();
  std::vector<i64> res = net_.cap_;
  std::vector<int> parent(n, -1);
  std::vector<int> stamp(n, 0);
  std::vector<std::pair<VertexId, std::size_t>> stack;
  int cur = 0;

  i64 flow = 0;
  i64 sat_count = 0;

  auto augment = [&](VertexId end_vertex) {
    // Parent-arc chain back to t, completed by an aux arc unless the search
    // stepped onto the root directly.
    std::vector<int> path;
    if (end_vertex >= 0) path.push_back(aux_arc_[end_vertex]);
    VertexId v = end_vertex >= 0 ? end_vertex : root;
    while (v != t) {
      int a = parent[v];
      path.push_back(a);
      v = net_.tails_[a];
    }
    for (int a : path) {
      if (res[a] <= 0) throw std::logic_error("augmenting a saturated arc");
      res[a]--;
      res[a ^ 1]++;
      if (is_aux_[a] && res[a] == 0) sat_count++;
    }
    flow++;
    ans.iterations++;
    if (counters) counters->local_iterations++;
    // Every saturated vertex pushed at least aux_units units of flow, and
    // each unit crosses exactly one aux arc.
    if (sat_count * sparse_.derived.aux_units > flow)
      throw std::logic_error("saturated-vertex accounting violated");
  };

  while (flow < iter_cap_) {
    ++cur;
    stack.clear();
    std::uint64_t followed = 0;
    int end_vertex = -2;  // -2: no path, -1: reached root directly
    stamp[t] = cur;
    if (res[aux_arc_[t]] > 0) {
      end_vertex = t;
    } else {
      stack.push_back({t, 0});
      while (!stack.empty()) {
        auto& top = stack.back();
        VertexId v = top.first;
        const std::vector<int>& arcs = net_.arcs_of_[v];
        if (top.second >= arcs.size()) {
          stack.pop_back();
          continue;
        }
        int a = arcs[top.second++];
        VertexId h = net_.to_[a];
        if (res[a] <= 0 || stamp[h] == cur) continue;
        followed++;
        if (followed > edge_budget_) break;
        stamp[h] = cur;
        parent[h] = a;
        if (h == root) {
          end_vertex = -1;
          break;
        }
        if (res[aux_arc_[h]] > 0) {
          end_vertex = h;
          break;
        }
        stack.push_back({h, 0});
      }
    }
    ans.arcs_traversed += followed;
    if (counters) counters->local_arc_traversals += followed;
    if (followed > edge_budget_) {
      if (strict_budget)
        throw std::logic_error("local search exceeded its edge budget");
      ans.budget_exceeded = true;
      return ans;
    }
    if (end_vertex == -2) {
      // Residual graph disconnected: the visited set is the sink component
      // of a minimum (t, root) cut of value `flow` in the reversed graph.
      if (flow > filter_units_) return ans;
      for (VertexId v = 0; v < n; ++v)
        if (stamp[v] == cur)
          ans.sink_component.push_back(sparse_.sparse_to_orig[v]);
      std::sort(ans.sink_component.begin(), ans.sink_component.end());
      ans.weight = Rational(flow) * sparse_.tau;
      ans.above_threshold = false;
      return ans;
    }
    augment(end_vertex);
  }
  return ans;  // iteration cap reached: cut weight certified above threshold
}

// ---------------------------------------------------------------------------
// Vertex variant

LocalVertexCut::LocalVertexCut(SparsifiedVertexGraph sparsified,
                               const SparsifyParams& user_params,
                               OpCounters* counters)
    : sparse_(std::move(sparsified)), user_eps_(user_params.eps) {
  if (counters) counters->local_builds++;
  Budgets b = compute_budgets(user_params, sparse_.derived);
  iter_cap_ = b.iter_cap;
  filter_units_ = b.filter_units;
  edge_budget_ = b.edge_budget;
  cap_inf_ = iter_cap_ + 1;

  const VertexWeightedDigraph& sg = sparse_.graph;
  const VertexId n = sparse_.original_n;
  const VertexId root = sparse_.root;

  // Split graph of the reversed sparsified graph. Auxiliary (r, a_v, v)
  // paths collapse to direct (v+, r-) escape arcs carrying a_v's weight.
  // Connectors induced by real root edges land on r- with effectively
  // infinite capacity: the root's side of an edge is never removable, which
  // also keeps rewired vertices out of every derived sink component.
  std::map<std::pair<VertexId, VertexId>, i64> agg;
  auto aux_id = [&](VertexId v) { return v >= n; };
  for (EdgeId e = 0; e < static_cast<EdgeId>(sg.edge_count()); ++e) {
    VertexId x = sg.edge_tail(e), y = sg.edge_head(e);
    if (aux_id(x) || aux_id(y)) continue;  // handled by the collapse below
    if (y == root) continue;               // arcs out of r+ are unreachable
    if (x == root)
      agg[{out_node(y), in_node(root)}] += cap_inf_;
    else
      agg[{out_node(y), in_node(x)}] += integral_weight(sg.weight(y));
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    i64 w = integral_weight(sg.weight(v));
    if (w > 0) agg[{in_node(v), out_node(v)}] += w;
    if (sparse_.aux_vertex[v] >= 0)
      agg[{out_node(v), in_node(root)}] +=
          integral_weight(sg.weight(sparse_.aux_vertex[v]));
  }

  std::map<std::pair<VertexId, VertexId>, int> arc_of;
  for (const auto& [key, cap] : agg) {
    if (arc_of.count(key)) continue;
    auto mirror = std::make_pair(key.second, key.first);
    auto back_it = agg.find(mirror);
    i64 back = back_it == agg.end() ? 0 : back_it->second;
    int a = net_.add_pair(key.first, key.second, cap, back);
    arc_of[key] = a;
    arc_of[mirror] = a + 1;
  }

  escape_arc_.assign(n, -1);
  internal_arc_.assign(n, -1);
  conn_head_.assign(net_.cap_.size(), -1);
  escape_owner_.assign(net_.cap_.size(), -1);
  internal_owner_.assign(net_.cap_.size(), -1);
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    auto esc = arc_of.find({out_node(v), in_node(root)});
    if (esc == arc_of.end())
      throw std::logic_error("vertex lacks an escape arc to the root");
    escape_arc_[v] = esc->second;
    escape_owner_[esc->second] = v;
    auto internal = arc_of.find({in_node(v), out_node(v)});
    if (internal != arc_of.end()) {
      internal_arc_[v] = internal->second;
      internal_owner_[internal->second] = v;
    }
  }
  for (const auto& [key, arc] : arc_of) {
    auto [x, y] = key;
    if (arc % 2 == 0 && x % 2 == 1 && y % 2 == 0 && y != in_node(root))
      conn_head_[arc] = y / 2;  // forward connector (u+, v-)
  }
  net_.finish(2 * n, true);
}

LocalQueryAnswer LocalVertexCut::query(VertexId t,
                                       OpCounters* counters) const {
  if (counters) counters->local_queries++;
  const VertexId n = sparse_.original_n;
  const VertexId root = sparse_.root;
  if (t < 0 || t >= n) throw std::out_of_range("query target out of range");
  if (!sparse_.eligible_sink[t])
    throw std::invalid_argument(
        "query target must lie in V' (not the root or its out-neighbor)");
  LocalQueryAnswer ans;
  if (sparse_.rewired[t]) return ans;  // its cuts were destroyed

  std::vector<i64> res = net_.cap_;
  // The source's own weight is not removable, so its out-connectors must not
  // bind; the escape arc keeps the auxiliary weight.
  const VertexId src = out_node(t);
  for (int a : net_.arcs_of_[src]) {
    VertexId h = net_.to_[a];
    if (net_.cap_[a] > 0 && h % 2 == 0 && h != in_node(root))
      res[a] = cap_inf_;
  }

  const VertexId nodes = net_.node_count();
  std::vector<int> parent(nodes, -1);
  std::vector<int> stamp(nodes, 0);
  std::vector<std::pair<VertexId, std::size_t>> stack;
  int cur = 0;

  i64 flow = 0;
  i64 sat_vout = 0;
  std::vector<std::int32_t> flow_in_cnt(n, 0);
  std::vector<bool> vin_saturated(n, false);
  i64 sum_sat_vin_outdeg = 0;

  auto vout_saturated = [&](VertexId v) { return res[escape_arc_[v]] == 0; };
  auto refresh_vin = [&](VertexId v) {
    // v- is saturated when its split edge carries no residual (an absent
    // zero-capacity edge counts as saturated) while v+ still has escape.
    bool internal_sat =
        internal_arc_[v] < 0 || res[internal_arc_[v]] == 0;
    bool now = internal_sat && !vout_saturated(v);
    if (now == vin_saturated[v]) return;
    vin_saturated[v] = now;
    sum_sat_vin_outdeg += now ? flow_in_cnt[v] : -flow_in_cnt[v];
  };

  auto cross_arc = [&](int a) {
    if (res[a] <= 0) throw std::logic_error("augmenting a saturated arc");
    res[a]--;
    res[a ^ 1]++;
    int fwd = a & ~1;
    bool forward = a == fwd;
    if (escape_owner_[fwd] >= 0) {
      VertexId v = escape_owner_[fwd];
      if (forward && res[fwd] == 0) {
        sat_vout++;
        refresh_vin(v);
      }
    } else if (internal_owner_[fwd] >= 0) {
      VertexId v = internal_owner_[fwd];
      if (forward && res[fwd] == 0) refresh_vin(v);
      if (!forward && res[fwd] == 1) refresh_vin(v);
    } else if (conn_head_[fwd] >= 0) {
      VertexId v = conn_head_[fwd];
      if (forward && res[fwd ^ 1] == 1) {
        flow_in_cnt[v]++;
        if (vin_saturated[v]) sum_sat_vin_outdeg++;
      } else if (!forward && res[a] == 0) {
        flow_in_cnt[v]--;
        if (vin_saturated[v]) sum_sat_vin_outdeg--;
      }
    }
  };

  auto augment = [&](VertexId end_vertex) {
    std::vector<int> path;
    if (end_vertex >= 0) path.push_back(escape_arc_[end_vertex]);
    VertexId v = end_vertex >= 0 ? out_node(end_vertex) : in_node(root);
    while (v != src) {
      int a = parent[v];
      path.push_back(a);
      v = net_.tails_[a];
    }
    for (int a : path) cross_arc(a);
    flow++;
    ans.iterations++;
    if (counters) counters->local_iterations++;
    if (sat_vout * sparse_.derived.aux_units > flow)
      throw std::logic_error("saturated v+ accounting violated");
    if (sum_sat_vin_outdeg > flow)
      throw std::logic_error("saturated v- out-degree accounting violated");
  };

  while (flow < iter_cap_) {
    ++cur;
    stack.clear();
    std::uint64_t followed = 0;
    int end_vertex = -2;
    stamp[src] = cur;
    if (res[escape_arc_[t]] > 0) {
      end_vertex = t;
    } else {
      stack.push_back({src, 0});
      while (!stack.empty()) {
        auto& top = stack.back();
        VertexId v = top.first;
        const std::vector<int>& arcs = net_.arcs_of_[v];
        if (top.second >= arcs.size()) {
          stack.pop_back();
          continue;
        }
        int a = arcs[top.second++];
        VertexId h = net_.to_[a];
        if (res[a] <= 0 || stamp[h] == cur) continue;
        followed++;
        if (followed > edge_budget_) break;
        stamp[h] = cur;
        parent[h] = a;
        if (h == in_node(root)) {
          end_vertex = -1;
          break;
        }
        if (h % 2 == 1) {
          int esc = escape_arc_[h / 2];
          if (esc >= 0 && res[esc] > 0) {
            end_vertex = h / 2;
            break;
          }
        }
        stack.push_back({h, 0});
      }
    }
    ans.arcs_traversed += followed;
    if (counters) counters->local_arc_traversals += followed;
    if (followed > edge_budget_) {
      if (strict_budget)
        throw std::logic_error("local search exceeded its edge budget");
      ans.budget_exceeded = true;
      return ans;
    }
    if (end_vertex == -2) {
      // Terminal: the sink component is the set of originals whose out-node
      // stayed reachable; its vertex in-cut in the sparsified graph is the
      // weight the success filter judges.
      std::vector<bool> mask(sparse_.graph.vertex_count(), false);
      for (VertexId v = 0; v < n; ++v)
        if (v != root && stamp[out_node(v)] == cur) {
          mask[v] = true;
          ans.sink_component.push_back(v);
        }
      auto vic = vertex_in_cut(sparse_.graph, root, mask);
      if (!vic)
        throw std::logic_error(
            "derived sink component is adjacent to the root");
      i64 units = integral_weight(vic->weight);
      if (units > filter_units_) {
        ans.sink_component.clear();
        return ans;
      }
      // Reported weight covers the real separator vertices only: the
      // auxiliary vertices have no counterpart in the input graph, and the
      // sink component is the deliverable.
      Rational real_units;
      for (VertexId v : vic->separator)
        if (v < n) real_units += sparse_.graph.weight(v);
      ans.weight = real_units * sparse_.tau;
      ans.above_threshold = false;
      return ans;
    }
    augment(end_vertex);
  }
  return ans;
}

LocalEdgeCut build_local_ec(const WeightedDigraph& g, VertexId root,
                            const SparsifyParams& params,
                            OpCounters* counters) {
  SparsifyParams inner = params;
  inner.eps = params.constants.c_eps * params.eps;
  return LocalEdgeCut(sparsify_edge(g, root, inner, counters), params,
                      counters);
}

LocalVertexCut build_local_vc(const VertexWeightedDigraph& g, VertexId root,
                              const SparsifyParams& params,
                              OpCounters* counters) {
  SparsifyParams inner = params;
  inner.eps = params.constants.c_eps * params.eps;
  return LocalVertexCut(sparsify_vertex(g, root, inner, counters), params,
                        counters);
}

}  // namespace dircut
