#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dag.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "node_set.hpp"

namespace layerdag {

struct SolveConfig {
  NodeSet cause_vars;   // must end in the leftmost block's interface
  NodeSet effect_vars;  // must end in the rightmost block
  std::optional<std::chrono::milliseconds> time_budget;
  // With prune off the search degenerates to pure leaf enumeration: no
  // bound pruning and no width-preserving auto-commitments, so every
  // decomposition shows up as a leaf exactly once.
  bool prune = true;
  // Fires on each strictly improving leaf.
  std::function<void(const LayerDecomposition&, int)> incumbent_callback;
  // Fires on every constraint-satisfying leaf; observability hook for the
  // enumeration-completeness tests.
  std::function<void(const LayerDecomposition&)> leaf_callback;
};

struct SolveResult {
  std::optional<LayerDecomposition> best;
  std::optional<int> width;
  bool optimal = false;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t branch_nodes = 0;  // expansions that recursed into >= 2 children
};

// Admissible bound: the width d must reach once every uninserted parent of
// an already-placed node is pushed into the block its child dictates (an
// interfaced child pins its parents one block further left; a plain child
// pins them into its own block; a child in the leftmost interface pins
// them into a block that does not exist yet). Two children pinning the
// same parent to different blocks prove d extends to nothing (nullopt).
inline std::optional<int> lower_bound(const Dag& g,
                                      const PartialDecomposition& d) {
  const int k = d.ld.block_count() - 1;
  if (k < 0) return 0;
  const int n = g.node_count();
  std::vector<int> pos(n, -1);
  for (int i = 0; i <= k; ++i)
    d.ld.layers[i].block.for_each([&](int v) { pos[v] = i; });
  std::vector<int> forced(n, -1);
  std::vector<int> extra(k + 2, 0);
  bool infeasible = false;
  d.vars.for_each([&](int y) {
    if (infeasible) return;
    const int fb =
        d.ld.layers[pos[y]].interface.contains(y) ? pos[y] + 1 : pos[y];
    for (int x : g.parents(y)) {
      if (d.vars.contains(x)) continue;
      if (forced[x] < 0) {
        forced[x] = fb;
        ++extra[fb];
      } else if (forced[x] != fb) {
        infeasible = true;
        return;
      }
    }
  });
  if (infeasible) return std::nullopt;
  int h = extra[k + 1];
  for (int i = 0; i <= k; ++i)
    h = std::max(h, d.ld.layers[i].block.count() + extra[i]);
  return h;
}

namespace detail {

inline NodeSet sized_to(const NodeSet& s, int n, const char* what) {
  if (s.universe() == n) return s;
  if (s.universe() == 0 && s.empty()) return NodeSet(n);
  throw scope_error(std::string(what) +
                    " variable set sized for a different graph");
}

// Like valid_placements, but also offers a fresh singleton block in every
// gap between existing blocks. A search that walks one connected
// component only ever needs new blocks at the ends, but when placement
// constraints force several components into one search, their blocks can
// interleave, and a later component may have to open a block between two
// established ones. Results need not keep d as a sub-PLD.
inline std::vector<PartialDecomposition> valid_placements_with_gaps(
    const Dag& g, const PartialDecomposition& d, int x) {
  NodeSet scope = d.vars;
  scope.insert(x);
  const int blocks = d.ld.block_count();
  const int universe = d.vars.universe();
  std::vector<LayerDecomposition> cands = placement_candidates(d.ld, x);
  Layer plain{NodeSet(universe), NodeSet(universe)};
  plain.block.insert(x);
  Layer interfaced = plain;
  interfaced.interface.insert(x);
  for (int gap = 1; gap < blocks; ++gap)
    for (const Layer& fresh : {plain, interfaced}) {
      LayerDecomposition c = d.ld;
      c.layers.insert(c.layers.begin() + gap, fresh);
      cands.push_back(std::move(c));
    }
  std::vector<PartialDecomposition> out;
  for (LayerDecomposition& cand : cands) {
    if (validate(g, cand, scope)) continue;
    PartialDecomposition pld{std::move(cand), scope};
    bool seen = false;
    for (const PartialDecomposition& prev : out)
      if (prev == pld) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(pld));
  }
  return out;
}

struct Searcher {
  const Dag& g;
  const SolveConfig& cfg;
  NodeSet cause, effect;
  bool constrained;
  NodeClassification cls;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  NodeSet all;
  bool expired = false;
  std::optional<LayerDecomposition> best;
  int best_width = 0;
  std::uint64_t nodes_expanded = 0, branch_nodes = 0;

  // Constrained searches over a disconnected graph must be able to open
  // blocks between existing ones; see valid_placements_with_gaps.
  bool gap_blocks = false;

  Searcher(const Dag& graph, const SolveConfig& config, NodeSet cause_set,
           NodeSet effect_set,
           std::optional<std::chrono::steady_clock::time_point> until)
      : g(graph),
        cfg(config),
        cause(std::move(cause_set)),
        effect(std::move(effect_set)),
        constrained(!cause.empty() || !effect.empty()),
        cls(classify_nodes(graph)),
        deadline(until),
        all(NodeSet::full(graph.node_count())) {
    if (constrained) gap_blocks = weakly_connected_components(g).size() > 1;
  }

  bool out_of_time() {
    if (expired) return true;
    if (deadline && std::chrono::steady_clock::now() >= *deadline)
      expired = true;
    return expired;
  }

  // Placed cause variables must currently sit in the leftmost interface
  // and placed effect variables in the rightmost block; memberships never
  // change after insertion, so anything else can no longer be repaired.
  bool placement_ok(const PartialDecomposition& d) const {
    if (!constrained || d.ld.layers.empty()) return true;
    bool ok = true;
    (cause & d.vars).for_each([&](int y) {
      if (!d.ld.layers.back().interface.contains(y)) ok = false;
    });
    if (!ok) return false;
    (effect & d.vars).for_each([&](int y) {
      if (!d.ld.layers.front().block.contains(y)) ok = false;
    });
    return ok;
  }

  bool leaf_ok(const PartialDecomposition& d) const {
    if (!constrained) return true;
    if (d.ld.layers.empty()) return cause.empty() && effect.empty();
    return cause.is_subset_of(d.ld.layers.back().interface) &&
           effect.is_subset_of(d.ld.layers.front().block);
  }

  std::vector<PartialDecomposition> filtered_insertions(
      const PartialDecomposition& d, int x) const {
    auto ins = gap_blocks && !d.vars.empty()
                   ? valid_placements_with_gaps(g, d, x)
                   : insertions(g, d, x);
    if (constrained)
      std::erase_if(ins, [&](const PartialDecomposition& c) {
        return !placement_ok(c);
      });
    return ins;
  }

  // Commits everything that is forced until only genuine choice points
  // remain, or proves d a dead end (nullopt). `auto_commit` additionally
  // enables the two width-preserving commitments: the canonical insertion
  // of a parentless node, and the sole lookahead survivor of a chorded
  // node. On deadline expiry returns d unresolved; callers treat that as
  // "not proven dead".
  std::optional<PartialDecomposition> resolve(PartialDecomposition d,
                                              bool auto_commit) {
    for (;;) {
      if (out_of_time()) return d;
      NodeSet boundary = boundary_vars(g, d.vars);
      if (boundary.empty()) return d;
      std::vector<int> vars = boundary.to_vector();
      std::vector<std::vector<PartialDecomposition>> ins;
      ins.reserve(vars.size());
      for (int x : vars) {
        ins.push_back(filtered_insertions(d, x));
        if (ins.back().empty()) return std::nullopt;  // nothing fits x
      }
      bool committed = false;
      for (std::size_t i = 0; i < vars.size() && !committed; ++i)
        if (ins[i].size() == 1) {  // unique placement: forced
          d = std::move(ins[i][0]);
          committed = true;
        }
      if (committed) continue;
      if (!auto_commit) return d;
      if (!constrained) {
        // A parentless node's two placements complete to equal minimum
        // width, so the first is committed without loss. Placement
        // constraints void that equivalence, hence the gate above.
        for (std::size_t i = 0; i < vars.size() && !committed; ++i)
          if (cls.roots.contains(vars[i]) && ins[i].size() == 2) {
            d = std::move(ins[i][0]);
            committed = true;
          }
        if (committed) continue;
      }
      for (std::size_t i = 0; i < vars.size() && !committed; ++i) {
        // For a chorded node at most one placement extends to a full
        // decomposition; the lookahead discards candidates proven dead.
        if (!cls.chorded.contains(vars[i]) || ins[i].size() != 2) continue;
        auto r0 = resolve(ins[i][0], auto_commit);
        if (out_of_time()) return d;
        auto r1 = resolve(ins[i][1], auto_commit);
        if (out_of_time()) return d;
        if (!r0 && !r1) return std::nullopt;
        if (r0 && r1) continue;  // neither refuted: real choice point
        d = r0 ? std::move(*r0) : std::move(*r1);
        committed = true;
      }
      if (!committed) return d;
    }
  }

  int select_var(const PartialDecomposition& d, const NodeSet& boundary) const {
    if (boundary.empty()) {
      // First node overall, or the first node of an untouched component
      // in a constrained search: highest degree, lowest index.
      NodeSet pool = all - d.vars;
      int bestv = -1, bestdeg = -1;
      pool.for_each([&](int v) {
        int deg = g.degree(v);
        if (deg > bestdeg) {
          bestdeg = deg;
          bestv = v;
        }
      });
      return bestv;
    }
    // Prefer chorded over parentless over the rest (shrinking the set the
    // branch count is exponential in), then nodes with the most placed
    // neighbors, then lowest index.
    int bestv = -1, bestrank = 3, bestplaced = -1;
    boundary.for_each([&](int v) {
      int rank = cls.chorded.contains(v) ? 0 : cls.roots.contains(v) ? 1 : 2;
      int placed = (g.adjacent(v) & d.vars).count();
      if (rank < bestrank || (rank == bestrank && placed > bestplaced)) {
        bestrank = rank;
        bestplaced = placed;
        bestv = v;
      }
    });
    return bestv;
  }

  std::vector<PartialDecomposition> children_of(const PartialDecomposition& d,
                                                int x) const {
    std::vector<PartialDecomposition> kids;
    if (d.vars.empty())
      kids = initial_plds(g, x);
    else if (!g.adjacent(x).intersects(d.vars))
      // Node from a component no placed node touches: unconstrained by
      // its neighbors, so every placement is a candidate.
      kids = gap_blocks ? valid_placements_with_gaps(g, d, x)
                        : detail::valid_placements(g, d, x);
    else
      return filtered_insertions(d, x);
    if (constrained)
      std::erase_if(kids, [&](const PartialDecomposition& c) {
        return !placement_ok(c);
      });
    return kids;
  }

  void expand(PartialDecomposition d) {
    ++nodes_expanded;
    if (out_of_time()) return;
    auto rd = resolve(std::move(d), /*auto_commit=*/cfg.prune);
    if (!rd) return;
    d = std::move(*rd);
    if (cfg.prune) {
      auto lb = lower_bound(g, d);
      if (!lb) return;
      if (best && *lb >= best_width) return;
    }
    if (d.vars == all) {
      if (!leaf_ok(d)) return;
      if (cfg.leaf_callback) cfg.leaf_callback(d.ld);
      const int w = width(d.ld);
      if (!best || w < best_width) {
        best = d.ld;
        best_width = w;
        if (cfg.incumbent_callback) cfg.incumbent_callback(d.ld, w);
      }
      return;
    }
    NodeSet boundary = boundary_vars(g, d.vars);
    const int x = select_var(d, boundary);
    std::vector<PartialDecomposition> kids = children_of(d, x);
    int entered = 0;
    for (PartialDecomposition& kid : kids) {
      if (out_of_time()) break;
      if (cfg.prune) {
        auto lb = lower_bound(g, kid);
        if (!lb || (best && *lb >= best_width)) continue;
      }
      ++entered;
      expand(std::move(kid));
    }
    if (entered >= 2) ++branch_nodes;
  }

  SolveResult run() {
    expand(empty_pld(g.node_count()));
    SolveResult res;
    res.nodes_expanded = nodes_expanded;
    res.branch_nodes = branch_nodes;
    res.optimal = !expired;
    if (best) {
      res.width = best_width;
      res.best = std::move(best);
    }
    return res;
  }
};

}  // namespace detail

// Commits all forced and width-safe insertions into d, or returns nullopt
// when some boundary node no longer fits anywhere.
inline std::optional<PartialDecomposition> resolve(const Dag& g,
                                                   const PartialDecomposition& d,
                                                   const SolveConfig& cfg = {}) {
  const int n = g.node_count();
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (cfg.time_budget)
    deadline = std::chrono::steady_clock::now() + *cfg.time_budget;
  detail::Searcher s(g, cfg, detail::sized_to(cfg.cause_vars, n, "cause"),
                     detail::sized_to(cfg.effect_vars, n, "effect"), deadline);
  return s.resolve(d, /*auto_commit=*/true);
}

// Depth-first branch-and-bound over one-node insertions. Exact when run to
// completion with pruning on; interruptible via time_budget, in which case
// the best leaf found so far is returned with optimal=false.
inline SolveResult solve(const Dag& g, const SolveConfig& cfg = {}) {
  const int n = g.node_count();
  NodeSet cause = detail::sized_to(cfg.cause_vars, n, "cause");
  NodeSet effect = detail::sized_to(cfg.effect_vars, n, "effect");
  const bool constrained = !cause.empty() || !effect.empty();
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (cfg.time_budget)
    deadline = std::chrono::steady_clock::now() + *cfg.time_budget;

  SolveResult res;
  // A cause variable with a parent can never sit in the leftmost
  // interface, whose members must be parentless.
  bool dead = false;
  cause.for_each([&](int y) {
    if (g.in_degree(y) > 0) dead = true;
  });
  if (dead) {
    res.optimal = true;
    return res;
  }
  if (n == 0) {
    res.best = LayerDecomposition{};
    res.width = 0;
    res.optimal = true;
    return res;
  }

  std::vector<NodeSet> comps = weakly_connected_components(g);
  if (comps.size() > 1 && !constrained) {
    // Independent components: solve each alone and lay the decompositions
    // side by side (first component rightmost). Restricting any global
    // decomposition to one component stays valid, so the concatenation's
    // width — the max of the per-component optima — is itself optimal.
    SolveConfig subcfg;
    subcfg.prune = cfg.prune;
    LayerDecomposition combined;
    res.optimal = true;
    bool complete = true;
    for (const NodeSet& comp : comps) {
      Dag sub = induced_subgraph(g, comp);
      detail::Searcher s(sub, subcfg, NodeSet(sub.node_count()),
                         NodeSet(sub.node_count()), deadline);
      SolveResult r = s.run();
      res.nodes_expanded += r.nodes_expanded;
      res.branch_nodes += r.branch_nodes;
      if (!r.optimal) res.optimal = false;
      if (!r.best) {
        complete = false;
        continue;
      }
      const std::vector<int> to_global = comp.to_vector();
      for (const Layer& l : r.best->layers) {
        Layer gl{NodeSet(n), NodeSet(n)};
        l.block.for_each([&](int v) { gl.block.insert(to_global[v]); });
        l.interface.for_each([&](int v) { gl.interface.insert(to_global[v]); });
        combined.layers.push_back(std::move(gl));
      }
    }
    if (complete) {
      res.width = width(combined);
      res.best = std::move(combined);
    }
    return res;
  }

  detail::Searcher s(g, cfg, std::move(cause), std::move(effect), deadline);
  return s.run();
}

}  // namespace layerdag
