#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dag.hpp"
#include "decomposition.hpp"
#include "edge_list.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "solver.hpp"

namespace layerdag::cli {

namespace detail {

inline Dag load_graph(const std::string& path) {
  if (path == "-") return parse_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  return parse_edge_list(in);
}

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error(std::string("bad JSON in '") + path + "': " + e.what());
  }
}

inline NodeSet named_set(const Dag& g, const std::vector<std::string>& names) {
  NodeSet s(g.node_count());
  for (const std::string& name : names) s.insert(g.index_of(name));
  return s;
}

}  // namespace detail

// Exit codes: 0 success (or a passing verify), 1 violation / no
// decomposition, 2 usage or input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{
      "DAG layer-decomposition toolkit. Decomposition JSON lists blocks "
      "rightmost first: array index 0 is the rightmost block."};
  app.require_subcommand(1);

  std::string in_path, decomp_path;
  std::vector<std::string> cause_names, effect_names;
  long long time_limit_ms = -1;
  bool no_prune = false;
  int cap = kDefaultOracleCap;

  auto* solve_cmd = app.add_subcommand(
      "solve", "compute a minimum-width layer decomposition");
  solve_cmd->add_option("input", in_path, "edge-list file, or - for stdin")
      ->required();
  solve_cmd->add_option("--time-limit-ms", time_limit_ms,
                        "stop after this many milliseconds, keeping the best "
                        "decomposition found");
  solve_cmd->add_option("--cause", cause_names,
                        "nodes that must land in the leftmost block's "
                        "interface");
  solve_cmd->add_option("--effect", effect_names,
                        "nodes that must land in the rightmost block "
                        "(block index 0 in the output)");
  solve_cmd->add_flag("--no-prune", no_prune,
                      "disable pruning and automatic commitments (every "
                      "decomposition becomes a search leaf)");

  auto* verify_cmd = app.add_subcommand(
      "verify", "check a decomposition JSON against a graph");
  verify_cmd->add_option("input", in_path, "edge-list file, or - for stdin")
      ->required();
  verify_cmd->add_option("decomposition", decomp_path, "decomposition JSON")
      ->required();

  auto* enum_cmd = app.add_subcommand(
      "enumerate", "dump every valid decomposition, one JSON per line");
  enum_cmd->add_option("input", in_path, "edge-list file, or - for stdin")
      ->required();
  enum_cmd->add_option("--cap", cap, "refuse graphs with more nodes");

  auto* metrics_cmd = app.add_subcommand(
      "metrics", "layerwidth, treewidth and bandwidth of a small graph");
  metrics_cmd->add_option("input", in_path, "edge-list file, or - for stdin")
      ->required();

  std::string family_name, reduction_path, roles_path;
  int family_param = 0;
  std::vector<std::string> random_spec;
  auto* gen_cmd = app.add_subcommand("generate", "emit a generated graph");
  auto* fam_opt = gen_cmd->add_option("--family", family_name,
                                      "star | chord_chain | bipartite_stack "
                                      "| bipartite");
  auto* param_opt =
      gen_cmd->add_option("--param", family_param, "family size parameter");
  param_opt->needs(fam_opt);
  fam_opt->needs(param_opt);
  auto* rand_opt = gen_cmd->add_option("--random", random_spec,
                                       "N P SEED: random DAG on N nodes, "
                                       "arc probability P");
  rand_opt->expected(3);
  auto* red_opt = gen_cmd->add_option(
      "--reduction", reduction_path,
      "JSON {\"sizes\":[...],\"bound\":D}: hardness-gadget graph");
  gen_cmd->add_option("--roles", roles_path,
                      "with --reduction: also write a role map JSON here")
      ->needs(red_opt);
  fam_opt->excludes(rand_opt)->excludes(red_opt);
  rand_opt->excludes(red_opt);

  try {
    std::vector<const char*> argv{"layerdag"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*solve_cmd) {
      Dag g = detail::load_graph(in_path);
      SolveConfig cfg;
      cfg.cause_vars = detail::named_set(g, cause_names);
      cfg.effect_vars = detail::named_set(g, effect_names);
      if (time_limit_ms >= 0)
        cfg.time_budget = std::chrono::milliseconds(time_limit_ms);
      cfg.prune = !no_prune;
      SolveResult r = solve(g, cfg);
      out << solve_result_to_json(g, r).dump(2) << "\n";
      return r.best ? 0 : 1;
    }
    if (*verify_cmd) {
      Dag g = detail::load_graph(in_path);
      LayerDecomposition d =
          decomposition_from_json(g, detail::load_json(decomp_path));
      auto v = validate(g, d, NodeSet::full(g.node_count()));
      if (!v) {
        out << nlohmann::ordered_json{{"ok", true}}.dump(2) << "\n";
        err << "Ok\n";
        return 0;
      }
      out << violation_to_json(g, *v).dump(2) << "\n";
      err << v->message << "\n";
      return 1;
    }
    if (*enum_cmd) {
      Dag g = detail::load_graph(in_path);
      for (const LayerDecomposition& d : enumerate_decompositions(g, cap))
        out << decomposition_to_json(g, d).dump() << "\n";
      return 0;
    }
    if (*metrics_cmd) {
      Dag g = detail::load_graph(in_path);
      const int n = g.node_count();
      SolveResult r = solve(g);
      const int lw = *r.width;
      int tw, bw;
      if (n <= kTreewidthCap) {
        tw = treewidth_small(g);
      } else {
        tw = min_fill_width(g);
        err << "treewidth: " << n << " nodes exceeds the exact cap of "
            << kTreewidthCap << "; reporting a greedy upper bound\n";
      }
      if (n <= kBandwidthCap) {
        bw = bandwidth_small(g);
      } else {
        bw = topo_order_width(g, topo_order_from_ld(g, *r.best));
        err << "bandwidth: " << n << " nodes exceeds the exact cap of "
            << kBandwidthCap
            << "; reporting the decomposition-order upper bound\n";
      }
      const bool bounds_hold =
          n == 0 || (tw <= 2 * lw - 1 && bw <= 2 * lw - 1);
      nlohmann::ordered_json j;
      j["layerwidth"] = lw;
      j["treewidth"] = tw;
      j["bandwidth"] = bw;
      j["bounds_hold"] = bounds_hold;
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*gen_cmd) {
      if (!random_spec.empty()) {
        const int n = std::stoi(random_spec[0]);
        const double p = std::stod(random_spec[1]);
        const std::uint64_t seed = std::stoull(random_spec[2]);
        if (n < 0 || p < 0.0 || p > 1.0)
          throw format_error("--random needs N >= 0 and P in [0,1]");
        write_edge_list(random_dag(n, p, seed), out);
        return 0;
      }
      if (!reduction_path.empty()) {
        ReductionLayout layout =
            reduction_graph(three_partition_from_json(
                detail::load_json(reduction_path)));
        write_edge_list(layout.graph, out);
        if (!roles_path.empty()) {
          std::ofstream rf(roles_path);
          if (!rf) throw format_error("cannot write '" + roles_path + "'");
          rf << roles_to_json(layout).dump(2) << "\n";
        }
        return 0;
      }
      if (!family_name.empty()) {
        write_edge_list(family(family_name, family_param), out);
        return 0;
      }
      err << "error: generate needs one of --family, --random, --reduction\n";
      return 2;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace layerdag::cli
