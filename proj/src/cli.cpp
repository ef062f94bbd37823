#include "dircut/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dircut/bench.hpp"
#include "dircut/graph_io.hpp"
#include "dircut/local_cut.hpp"
#include "dircut/oracle.hpp"
#include "dircut/rooted_cut.hpp"

namespace dircut {

namespace {

constexpr VertexId kOracleLimit = 60;

struct Record {
  std::vector<std::pair<std::string, std::string>> rows;
  void add(const std::string& key, const std::string& value) {
    rows.push_back({key, value});
  }
  void add(const std::string& key, std::uint64_t value) {
    add(key, std::to_string(value));
  }
  void add_ids(const std::string& key, const std::vector<VertexId>& ids) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ids.size(); ++i)
      out << (i ? " " : "") << ids[i];
    add(key, out.str());
  }
  std::string str() const {
    std::ostringstream out;
    for (const auto& [k, v] : rows) out << k << ' ' << v << '\n';
    return out.str();
  }
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << "0x" << std::hex << v;
  return out.str();
}

void apply_constants(SparsifyConstants& c, const std::string& spec) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad --constants item: " + item);
    std::string key = item.substr(0, eq);
    Rational value = Rational::parse(item.substr(eq + 1));
    if (key == "c_tau")
      c.c_tau = value;
    else if (key == "c_delta")
      c.c_delta = value;
    else if (key == "c_w")
      c.c_w = value;
    else if (key == "c_zero")
      c.c_zero = value;
    else if (key == "c_eps")
      c.c_eps = value;
    else if (key == "C")
      c.sample_c = value;
    else if (key == "budget_c")
      c.budget_c = value;
    else
      throw std::runtime_error("unknown constant: " + key);
  }
}

void add_counters(Record& rec, const OpCounters& c) {
  rec.add("counter.sparsify-calls", c.sparsify_calls);
  rec.add("counter.sparsify-item-ops", c.sparsify_item_ops);
  rec.add("counter.attach-root-ops", c.attach_root_ops);
  rec.add("counter.dinic-calls", c.dinic_calls);
  rec.add("counter.flow-arc-traversals", c.flow_arc_traversals);
  rec.add("counter.flow-augmentations", c.flow_augmentations);
  rec.add("counter.local-builds", c.local_builds);
  rec.add("counter.local-queries", c.local_queries);
  rec.add("counter.local-iterations", c.local_iterations);
  rec.add("counter.local-arc-traversals", c.local_arc_traversals);
  rec.add("counter.pipeline-edge-traversals", c.pipeline_edge_traversals());
}

void add_cut(Record& rec, const CutResult& cut) {
  rec.add("weight", cut.weight.str());
  rec.add("root", std::to_string(cut.root));
  rec.add("sink-size", cut.sink_component.size());
  rec.add_ids("sink", cut.sink_component);
  if (cut.kind == CutKind::edge) {
    std::vector<VertexId> ids(cut.cut_edges.begin(), cut.cut_edges.end());
    rec.add_ids("cut-edges", ids);
  } else {
    rec.add_ids("separator", cut.separator);
  }
}

struct OracleOutcome {
  bool available = false;
  bool no_cut = false;
  Rational weight;
};

void add_oracle(Record& rec, const OracleOutcome& oracle,
                const ApproxCutReport& rep, const Rational& eps) {
  if (!oracle.available) {
    rec.add("oracle", "skipped");
    return;
  }
  if (oracle.no_cut) {
    rec.add("oracle", "nocut");
    rec.add("oracle-agrees", rep.no_cut ? "pass" : "fail");
    return;
  }
  rec.add("oracle-weight", oracle.weight.str());
  bool ok = rep.best && rep.best->weight >= oracle.weight &&
            rep.best->weight <= (Rational(1) + eps) * oracle.weight;
  rec.add("oracle-within-factor", ok ? "pass" : "fail");
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"(1+eps)-approximate minimum rooted/global cuts in directed graphs"};
  app.require_subcommand(1);

  std::string input_path;
  std::string constants_spec;
  std::string eps_text = "0.2";
  std::string fail_text = "0.05";
  std::uint64_t seed = 1;
  bool with_oracle = false;
  bool timings = false;
  int root = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_root) {
    cmd->add_option("input", input_path, "graph file (default stdin)");
    cmd->add_option("--eps", eps_text, "approximation parameter in (0,1)");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--fail-prob", fail_text, "target failure probability");
    cmd->add_option("--constants", constants_spec,
                    "overrides: c_tau=..,c_delta=..,c_w=..,c_zero=..,c_eps=..,C=..,budget_c=..");
    cmd->add_flag("--with-oracle", with_oracle,
                  "also run the exact oracle (n <= 60)");
    cmd->add_flag("--timings", timings, "include wall-clock timing");
    if (needs_root) cmd->add_option("--root", root, "root vertex id");
  };

  CLI::App* ec_rooted = app.add_subcommand("ec-rooted", "approximate minimum rooted edge cut");
  add_common(ec_rooted, true);
  CLI::App* ec_global = app.add_subcommand("ec-global", "approximate global minimum edge cut");
  add_common(ec_global, false);
  CLI::App* vc_rooted = app.add_subcommand("vc-rooted", "approximate minimum rooted vertex cut");
  add_common(vc_rooted, true);
  CLI::App* vc_global = app.add_subcommand("vc-global", "approximate global minimum vertex cut");
  add_common(vc_global, false);

  CLI::App* exact = app.add_subcommand("exact", "exact oracles");
  std::string exact_variant;
  exact->add_option("variant", exact_variant,
                    "ec-rooted|ec-global|vc-rooted|vc-global")
      ->required();
  add_common(exact, true);

  CLI::App* sparsify_cmd = app.add_subcommand("sparsify", "dump a sparsified graph");
  std::string lambda_text = "1";
  std::int64_t k_guess = 1;
  sparsify_cmd->add_option("--lambda", lambda_text, "connectivity guess")->required();
  sparsify_cmd->add_option("--k", k_guess, "sink size guess")->required();
  add_common(sparsify_cmd, true);

  CLI::App* local_cmd = app.add_subcommand("local-query", "debug a local cut query");
  std::int64_t local_t = 0;
  std::int64_t local_k = 1;
  std::string local_lambda = "1";
  local_cmd->add_option("--t", local_t, "query target")->required();
  local_cmd->add_option("--k", local_k, "sink size bound")->required();
  local_cmd->add_option("--lambda", local_lambda, "cut weight bound")->required();
  add_common(local_cmd, true);

  CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark harness");
  std::string family = "planted";
  std::string sizes_text = "64,128,256";
  int trials = 1;
  int plant_size = 4;
  bench_cmd->add_option("--family", family, "random|planted|layered");
  bench_cmd->add_option("--sizes", sizes_text, "comma-separated vertex counts");
  bench_cmd->add_option("--trials", trials, "trials per size");
  bench_cmd->add_option("--plant-size", plant_size, "planted sink size");
  add_common(bench_cmd, false);

  try {
    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    out << app.help();
    return {out.str(), e.get_exit_code() == 0 ? kExitOk : kExitUsage};
  }

  auto started = std::chrono::steady_clock::now();
  Record rec;
  try {
    DriverConfig cfg;
    cfg.eps = Rational::parse(eps_text);
    cfg.fail_prob = Rational::parse(fail_text);
    cfg.seed = seed;
    if (!constants_spec.empty()) apply_constants(cfg.constants, constants_spec);

    auto finish = [&](int code) {
      if (timings) {
        auto ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        rec.add("elapsed-ms", std::to_string(ms));
      }
      return CliResult{rec.str(), code};
    };

    if (bench_cmd->parsed()) {
      std::vector<VertexId> sizes;
      std::istringstream sin(sizes_text);
      std::string tok;
      while (std::getline(sin, tok, ','))
        if (!tok.empty()) sizes.push_back(std::stoi(tok));
      BenchResult res = run_bench(family, sizes, trials, cfg, plant_size);
      std::ostringstream out;
      for (const BenchRow& row : res.rows) {
        out << "bench family=" << row.family << " n=" << row.n
            << " trial=" << row.trial << " seed=" << row.seed
            << " weight=" << row.weight.str()
            << " edge-traversals=" << row.edge_traversals
            << " dinic-calls=" << row.dinic_calls
            << " local-queries=" << row.local_queries
            << " local-iterations=" << row.local_iterations;
        if (timings) out << " elapsed-ms=" << row.elapsed_ms;
        out << '\n';
      }
      out << "fit-exponent " << res.fit_exponent << '\n';
      return {out.str(), kExitOk};
    }

    ParsedGraph parsed = parse_graph(read_input(input_path));
    rec.add("input-digest", hex64(graph_digest(parsed)));
    rec.add("eps", cfg.eps.str());
    rec.add("seed", seed);
    rec.add("fail-prob", cfg.fail_prob.str());

    auto* edge_graph = std::get_if<WeightedDigraph>(&parsed);
    auto* vertex_graph = std::get_if<VertexWeightedDigraph>(&parsed);
    rec.add("mode", edge_graph ? "edge" : "vertex");

    auto require_edge = [&]() -> const WeightedDigraph& {
      if (!edge_graph)
        throw std::runtime_error("this command needs an edge-weighted graph");
      return *edge_graph;
    };
    auto require_vertex = [&]() -> const VertexWeightedDigraph& {
      if (!vertex_graph)
        throw std::runtime_error("this command needs a vertex-weighted graph");
      return *vertex_graph;
    };

    if (sparsify_cmd->parsed()) {
      rec.rows.clear();
      SparsifyParams params{cfg.eps, Rational::parse(lambda_text), k_guess,
                            seed, cfg.constants};
      std::ostringstream out;
      if (edge_graph) {
        SparsifiedGraph s = sparsify_edge(*edge_graph, root, params);
        out << emit_graph(s.graph);
        out << "tau " << s.tau.num() << '/' << s.tau.den() << '\n';
      } else {
        SparsifiedVertexGraph s = sparsify_vertex(*vertex_graph, root, params);
        out << emit_graph(s.graph);
        out << "tau " << s.tau.num() << '/' << s.tau.den() << '\n';
      }
      return {out.str(), kExitOk};
    }

    if (local_cmd->parsed()) {
      rec.rows.insert(rec.rows.begin(), {"command", "local-query"});
      SparsifyParams params{cfg.eps, Rational::parse(local_lambda), local_k,
                            seed, cfg.constants};
      LocalQueryAnswer ans;
      if (edge_graph) {
        LocalEdgeCut oracle = build_local_ec(*edge_graph, root, params);
        ans = oracle.query(static_cast<VertexId>(local_t));
      } else {
        LocalVertexCut oracle = build_local_vc(*vertex_graph, root, params);
        ans = oracle.query(static_cast<VertexId>(local_t));
      }
      rec.add("root", std::to_string(root));
      rec.add("t", std::to_string(local_t));
      if (ans.above_threshold) {
        rec.add("answer", "above-threshold");
      } else {
        rec.add("answer", "cut");
        rec.add("weight", ans.weight.str());
        rec.add_ids("sink", ans.sink_component);
      }
      rec.add("iterations", ans.iterations);
      rec.add("arcs-traversed", ans.arcs_traversed);
      return finish(kExitOk);
    }

    if (exact->parsed()) {
      rec.rows.insert(rec.rows.begin(), {"command", "exact " + exact_variant});
      if (exact_variant == "ec-rooted") {
        CutResult cut = exact_rooted_ec(require_edge(), root);
        rec.add("status", "ok");
        add_cut(rec, cut);
      } else if (exact_variant == "ec-global") {
        CutResult cut = exact_global_ec(require_edge());
        rec.add("status", "ok");
        add_cut(rec, cut);
      } else if (exact_variant == "vc-rooted") {
        auto cut = exact_rooted_vc(require_vertex(), root);
        rec.add("status", cut ? "ok" : "nocut");
        if (cut) add_cut(rec, *cut);
        if (!cut) return finish(kExitNoCut);
      } else if (exact_variant == "vc-global") {
        auto cut = exact_global_vc(require_vertex());
        rec.add("status", cut ? "ok" : "nocut");
        if (cut) add_cut(rec, *cut);
        if (!cut) return finish(kExitNoCut);
      } else {
        throw std::runtime_error("unknown exact variant: " + exact_variant);
      }
      return finish(kExitOk);
    }

    // approximate drivers
    ApproxCutReport rep;
    OracleOutcome oracle;
    std::string command;
    if (ec_rooted->parsed()) {
      command = "ec-rooted";
      const WeightedDigraph& g = require_edge();
      rep = approx_rooted_ec(g, root, cfg);
      if (with_oracle && g.vertex_count() <= kOracleLimit) {
        oracle.available = true;
        oracle.weight = exact_rooted_ec(g, root).weight;
      }
    } else if (ec_global->parsed()) {
      command = "ec-global";
      const WeightedDigraph& g = require_edge();
      rep = approx_global_ec(g, cfg);
      if (with_oracle && g.vertex_count() <= kOracleLimit) {
        oracle.available = true;
        oracle.weight = exact_global_ec(g).weight;
      }
    } else if (vc_rooted->parsed()) {
      command = "vc-rooted";
      const VertexWeightedDigraph& g = require_vertex();
      rep = approx_rooted_vc(g, root, cfg);
      if (with_oracle && g.vertex_count() <= kOracleLimit) {
        oracle.available = true;
        auto w = exact_rooted_vc(g, root);
        if (w)
          oracle.weight = w->weight;
        else
          oracle.no_cut = true;
      }
    } else if (vc_global->parsed()) {
      command = "vc-global";
      const VertexWeightedDigraph& g = require_vertex();
      rep = approx_global_vc(g, cfg);
      if (with_oracle && g.vertex_count() <= kOracleLimit) {
        oracle.available = true;
        auto w = exact_global_vc(g);
        if (w)
          oracle.weight = w->weight;
        else
          oracle.no_cut = true;
      }
    } else {
      return {app.help(), kExitUsage};
    }

    rec.rows.insert(rec.rows.begin(), {"command", command});
    if (rep.no_cut) {
      rec.add("status", "nocut");
      if (rep.degenerate)
        rec.add("degenerate-weight", rep.degenerate_weight.str());
      if (with_oracle) add_oracle(rec, oracle, rep, cfg.eps);
      add_counters(rec, rep.counters);
      return finish(kExitNoCut);
    }
    rec.add("status", "ok");
    add_cut(rec, *rep.best);
    rec.add("from-reversed", rep.from_reversed ? "1" : "0");
    rec.add("candidates", rep.candidates_examined);
    rec.add("guesses", rep.guesses.size());
    if (with_oracle) add_oracle(rec, oracle, rep, cfg.eps);
    add_counters(rec, rep.counters);
    return finish(kExitOk);
  } catch (const ParseError& e) {
    return {std::string("error: ") + e.what() + "\n", kExitParse};
  } catch (const std::logic_error& e) {
    return {std::string("internal error: ") + e.what() + "\n", kExitInternal};
  } catch (const std::exception& e) {
    return {std::string("error: ") + e.what() + "\n", kExitUsage};
  }
}

}  // namespace dircut
