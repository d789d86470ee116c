#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dag.hpp"
#include "errors.hpp"
#include "node_set.hpp"

namespace layerdag {

// One block of a decomposition: the block's node set T and its interface
// S ⊆ T, the subset through which the next block to the left may connect.
struct Layer {
  NodeSet block;      // T
  NodeSet interface;  // S
  friend bool operator==(const Layer&, const Layer&) = default;
};

// Ordered list of layers; index 0 is the rightmost block (holding sinks),
// the last index is the leftmost (holding sources). The empty list is the
// unique decomposition of the empty node set.
struct LayerDecomposition {
  std::vector<Layer> layers;

  int block_count() const { return int(layers.size()); }
  friend bool operator==(const LayerDecomposition&,
                         const LayerDecomposition&) = default;
};

inline int width(const LayerDecomposition& d) {
  int w = 0;
  for (const Layer& l : d.layers) w = std::max(w, l.block.count());
  return w;
}

inline NodeSet scope_of(const LayerDecomposition& d, int universe) {
  NodeSet s(universe);
  for (const Layer& l : d.layers) s |= l.block;
  return s;
}

// The five structural rules a decomposition must satisfy, in the order
// they are checked.
enum class Condition {
  partition,              // blocks are non-empty, disjoint, and cover scope
  interface_containment,  // S ⊆ T per layer
  separation,             // arcs may only bridge adjacent blocks, and only
                          // through the right-hand block's interface
  child_placement,        // children of interface nodes fall in the own
                          // block's non-interface part or the next
                          // interface to the right
  parent_placement,       // parents of interface nodes fill the adjacent
                          // block to the left; leftmost interface has none
};

inline const char* condition_name(Condition c) {
  switch (c) {
    case Condition::partition: return "partition";
    case Condition::interface_containment: return "interface_containment";
    case Condition::separation: return "separation";
    case Condition::child_placement: return "child_placement";
    case Condition::parent_placement: return "parent_placement";
  }
  return "?";
}

struct Violation {
  Condition condition;
  std::vector<int> witnesses;  // node indices, possibly empty
  std::string message;
};

// Checks d against the induced subgraph over `scope`. Returns the first
// failing condition (in enum order) with witness nodes, or nullopt when
// all conditions hold. Nodes mentioned by d outside `scope` are a usage
// error, not a violation.
inline std::optional<Violation> validate(const Dag& g,
                                         const LayerDecomposition& d,
                                         const NodeSet& scope) {
  const int n = g.node_count();
  const int k = d.block_count() - 1;

  for (const Layer& l : d.layers) {
    NodeSet out = (l.block | l.interface) - scope;
    if (!out.empty())
      throw scope_error("decomposition mentions node '" +
                        g.label(out.first()) + "' outside its scope");
  }

  // Blocks partition the scope: non-empty, disjoint, covering.
  std::vector<int> pos(n, -1);
  for (int i = 0; i <= k; ++i) {
    if (d.layers[i].block.empty())
      return Violation{Condition::partition, {},
                       "block " + std::to_string(i) + " is empty"};
    std::optional<Violation> dup;
    d.layers[i].block.for_each([&](int v) {
      if (dup) return;
      if (pos[v] >= 0)
        dup = Violation{Condition::partition,
                        {v},
                        "node '" + g.label(v) + "' appears in blocks " +
                            std::to_string(pos[v]) + " and " +
                            std::to_string(i)};
      pos[v] = i;
    });
    if (dup) return dup;
  }
  {
    std::optional<Violation> miss;
    scope.for_each([&](int v) {
      if (miss || pos[v] >= 0) return;
      miss = Violation{Condition::partition,
                       {v},
                       "node '" + g.label(v) + "' is in scope but in no block"};
    });
    if (miss) return miss;
  }

  for (int i = 0; i <= k; ++i) {
    if (!d.layers[i].interface.is_subset_of(d.layers[i].block)) {
      NodeSet out = d.layers[i].interface - d.layers[i].block;
      int v = out.first();
      return Violation{Condition::interface_containment,
                       {v},
                       "node '" + g.label(v) + "' is in interface " +
                           std::to_string(i) + " but not in its block"};
    }
  }

  // An arc between distinct blocks must join adjacent blocks, and its
  // right-hand endpoint must sit in that block's interface; equivalent to
  // the no-arc-across-the-cut reading, checked arc by arc.
  {
    std::optional<Violation> bad;
    g.for_each_arc([&](int a, int b) {
      if (bad) return;
      if (!scope.contains(a) || !scope.contains(b)) return;
      int pa = pos[a], pb = pos[b];
      if (pa == pb) return;
      int lo = std::min(pa, pb), hi = std::max(pa, pb);
      int lo_node = pa < pb ? a : b;
      if (hi != lo + 1 || !d.layers[lo].interface.contains(lo_node))
        bad = Violation{Condition::separation,
                        {a, b},
                        "arc '" + g.label(a) + " -> " + g.label(b) +
                            "' joins blocks " + std::to_string(pa) + " and " +
                            std::to_string(pb) +
                            " without passing through the right block's "
                            "interface"};
    });
    if (bad) return bad;
  }

  // Children of interface nodes stay in the own block outside its
  // interface, or drop into the interface one block to the right.
  for (int i = 0; i <= k; ++i) {
    std::optional<Violation> bad;
    d.layers[i].interface.for_each([&](int v) {
      if (bad) return;
      for (int c : g.children(v)) {
        if (!scope.contains(c)) continue;
        bool ok = d.layers[i].block.contains(c) &&
                  !d.layers[i].interface.contains(c);
        if (!ok && i > 0) ok = d.layers[i - 1].interface.contains(c);
        if (!ok) {
          bad = Violation{Condition::child_placement,
                          {v, c},
                          "child '" + g.label(c) + "' of interface node '" +
                              g.label(v) + "' (block " + std::to_string(i) +
                              ") is misplaced"};
          return;
        }
      }
    });
    if (bad) return bad;
  }

  // Parents of interface nodes fill the next block to the left; the
  // leftmost interface admits no parents at all.
  for (int i = 0; i <= k; ++i) {
    std::optional<Violation> bad;
    d.layers[i].interface.for_each([&](int v) {
      if (bad) return;
      for (int p : g.parents(v)) {
        if (!scope.contains(p)) continue;
        if (i == k || !d.layers[i + 1].block.contains(p)) {
          bad = Violation{Condition::parent_placement,
                          {p, v},
                          "parent '" + g.label(p) + "' of interface node '" +
                              g.label(v) + "' (block " + std::to_string(i) +
                              ") is not in the block to its left"};
          return;
        }
      }
    });
    if (bad) return bad;
  }

  return std::nullopt;
}

// Decomposition of the induced subgraph over `vars`.
struct PartialDecomposition {
  LayerDecomposition ld;
  NodeSet vars;
  friend bool operator==(const PartialDecomposition&,
                         const PartialDecomposition&) = default;
};

inline PartialDecomposition empty_pld(int universe) {
  return {LayerDecomposition{}, NodeSet(universe)};
}

inline PartialDecomposition make_pld(int universe, LayerDecomposition ld) {
  NodeSet vars = scope_of(ld, universe);
  return {std::move(ld), std::move(vars)};
}

// True iff inner's blocks embed into outer's at a single consecutive
// offset, preserving relative positions.
inline bool is_sub_pld(const PartialDecomposition& inner,
                       const PartialDecomposition& outer) {
  if (!inner.vars.is_subset_of(outer.vars)) return false;
  const int ki = inner.ld.block_count(), ko = outer.ld.block_count();
  if (ki == 0) return true;
  for (int m = 0; m + ki <= ko; ++m) {
    bool ok = true;
    for (int i = 0; i < ki && ok; ++i)
      ok = inner.ld.layers[i].block.is_subset_of(
               outer.ld.layers[i + m].block) &&
           inner.ld.layers[i].interface.is_subset_of(
               outer.ld.layers[i + m].interface);
    if (ok) return true;
  }
  return false;
}

namespace detail {

// All ways to place x relative to an existing decomposition, in a fixed
// order: into each block outside its interface, into each interface, then
// a fresh leftmost singleton block (plain, then interfaced), then a fresh
// rightmost one (plain, then interfaced). Candidates are not validated.
inline std::vector<LayerDecomposition> placement_candidates(
    const LayerDecomposition& d, int x) {
  std::vector<LayerDecomposition> out;
  const int blocks = d.block_count();
  if (blocks == 0) return out;  // empty case is owned by initial_plds
  out.reserve(2 * blocks + 4);
  for (int j = 0; j < blocks; ++j) {
    LayerDecomposition c = d;
    c.layers[j].block.insert(x);
    out.push_back(std::move(c));
  }
  for (int j = 0; j < blocks; ++j) {
    LayerDecomposition c = d;
    c.layers[j].block.insert(x);
    c.layers[j].interface.insert(x);
    out.push_back(std::move(c));
  }
  int universe = d.layers[0].block.universe();
  Layer plain{NodeSet(universe), NodeSet(universe)};
  plain.block.insert(x);
  Layer interfaced = plain;
  interfaced.interface.insert(x);
  for (const Layer& fresh : {plain, interfaced}) {
    LayerDecomposition c = d;
    c.layers.push_back(fresh);
    out.push_back(std::move(c));
  }
  for (const Layer& fresh : {plain, interfaced}) {
    LayerDecomposition c;
    c.layers.reserve(blocks + 1);
    c.layers.push_back(fresh);
    c.layers.insert(c.layers.end(), d.layers.begin(), d.layers.end());
    out.push_back(std::move(c));
  }
  return out;
}

// Candidate placements of x filtered down to the ones that validate over
// the enlarged scope, deduplicated, in candidate order.
inline std::vector<PartialDecomposition> valid_placements(
    const Dag& g, const PartialDecomposition& d, int x) {
  NodeSet scope = d.vars;
  scope.insert(x);
  std::vector<PartialDecomposition> out;
  for (LayerDecomposition& cand : placement_candidates(d.ld, x)) {
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

}  // namespace detail

// The two one-node decompositions every search starts from: x alone in
// its block, interfaced first.
inline std::vector<PartialDecomposition> initial_plds(const Dag& g, int x) {
  const int n = g.node_count();
  Layer interfaced{NodeSet(n), NodeSet(n)};
  interfaced.block.insert(x);
  interfaced.interface.insert(x);
  Layer plain{interfaced.block, NodeSet(n)};
  NodeSet vars(n);
  vars.insert(x);
  return {{LayerDecomposition{{interfaced}}, vars},
          {LayerDecomposition{{plain}}, vars}};
}

// Every extension of d by the single node x that keeps d embedded at one
// offset. x must already touch a placed node (or d must be empty, which
// falls back to initial_plds). At most two results survive validation.
inline std::vector<PartialDecomposition> insertions(
    const Dag& g, const PartialDecomposition& d, int x) {
  if (d.vars.empty()) return initial_plds(g, x);
  if (d.vars.contains(x))
    throw scope_error("node '" + g.label(x) + "' is already inserted");
  if (!g.adjacent(x).intersects(d.vars)) throw not_boundary_error(g.label(x));
  return detail::valid_placements(g, d, x);
}

}  // namespace layerdag
