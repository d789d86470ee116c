#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dag.hpp"
#include "decomposition.hpp"
#include "errors.hpp"

namespace layerdag {

namespace detail {

inline void require_permutation(int n, const std::vector<int>& order,
                                const char* what) {
  std::vector<char> seen(n, 0);
  if (int(order.size()) != n)
    throw not_permutation_error(std::string(what) + ": order has " +
                                std::to_string(order.size()) +
                                " entries for " + std::to_string(n) +
                                " nodes");
  for (int v : order) {
    if (v < 0 || v >= n || seen[v])
      throw not_permutation_error(std::string(what) +
                                  ": order is not a permutation of the nodes");
    seen[v] = 1;
  }
}

}  // namespace detail

// Cost of eliminating the nodes of the moralized graph in the given order:
// the largest neighbor count seen at any single elimination, where each
// elimination first pairwise connects the node's surviving neighbors.
inline int elimination_width(const Dag& g, const std::vector<int>& order) {
  const int n = g.node_count();
  detail::require_permutation(n, order, "elimination_width");
  UndirectedGraph u = moralize(g);
  int worst = 0;
  for (int v : order) {
    NodeSet nb = u.adj[v];
    worst = std::max(worst, nb.count());
    nb.for_each([&](int a) {
      u.adj[a] |= nb;
      u.adj[a].erase(a);
      u.adj[a].erase(v);
    });
    u.adj[v].clear();
  }
  return worst;
}

inline constexpr int kTreewidthCap = 9;
inline constexpr int kBandwidthCap = 10;

// Exact minimum elimination width, by dynamic programming over subsets of
// eliminated-first nodes. Matches the brute-force minimum over all n!
// orders (checked in tests) while staying O(2^n * poly).
inline int treewidth_small(const Dag& g, int cap = kTreewidthCap) {
  const int n = g.node_count();
  if (n > cap) throw cap_exceeded_error("treewidth_small", n, cap);
  if (n == 0) return 0;
  UndirectedGraph u = moralize(g);
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    u.adj[v].for_each([&](int w) { adj[v] |= 1u << w; });

  // Neighbors of v once the nodes in `gone` are eliminated: everything
  // outside `gone` reachable from v through `gone`.
  auto contracted_degree = [&](std::uint32_t gone, int v) {
    std::uint32_t reach = 1u << v, frontier = 1u << v, touched = 0;
    while (frontier) {
      std::uint32_t nbrs = 0;
      std::uint32_t f = frontier;
      while (f) {
        nbrs |= adj[std::countr_zero(f)];
        f &= f - 1;
      }
      touched |= nbrs;
      frontier = (nbrs & gone) & ~reach;
      reach |= frontier;
    }
    return std::popcount(touched & ~gone & ~(1u << v));
  };

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> best(full + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int w = n;
    for (std::uint32_t rest = s; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const std::uint32_t prior = s & ~(1u << v);
      w = std::min(w, std::max(best[prior], contracted_degree(prior, v)));
    }
    best[s] = w;
  }
  return best[full];
}

// Greedy minimum-fill elimination; an upper bound on treewidth for graphs
// past the exact cap.
inline int min_fill_width(const Dag& g) {
  const int n = g.node_count();
  if (n == 0) return 0;
  UndirectedGraph u = moralize(g);
  NodeSet alive = NodeSet::full(n);
  int worst = 0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    long long pick_fill = -1;
    alive.for_each([&](int v) {
      long long fill = 0;
      std::vector<int> nb = u.adj[v].to_vector();
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!u.adj[nb[i]].contains(nb[j])) ++fill;
      if (pick < 0 || fill < pick_fill) {
        pick = v;
        pick_fill = fill;
      }
    });
    NodeSet nb = u.adj[pick];
    worst = std::max(worst, nb.count());
    nb.for_each([&](int a) {
      u.adj[a] |= nb;
      u.adj[a].erase(a);
      u.adj[a].erase(pick);
    });
    u.adj[pick].clear();
    alive.erase(pick);
  }
  return worst;
}

// Blocks right to left, each block's nodes in index order: the elimination
// order a decomposition induces.
inline std::vector<int> elimination_order_from_ld(const LayerDecomposition& d) {
  std::vector<int> order;
  for (const Layer& l : d.layers) l.block.for_each([&](int v) {
    order.push_back(v);
  });
  return order;
}

// Largest parent-to-child distance in a topological order.
inline int topo_order_width(const Dag& g, const std::vector<int>& order) {
  const int n = g.node_count();
  if (int(order.size()) != n)
    throw not_topological_error("topo_order_width: order has " +
                                std::to_string(order.size()) +
                                " entries for " + std::to_string(n) +
                                " nodes");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    if (v < 0 || v >= n || pos[v] >= 0)
      throw not_topological_error(
          "topo_order_width: order is not a permutation of the nodes");
    pos[v] = i;
  }
  int worst = 0;
  g.for_each_arc([&](int p, int c) {
    if (pos[p] >= pos[c])
      throw not_topological_error("topo_order_width: arc '" + g.label(p) +
                                  " -> " + g.label(c) +
                                  "' runs backwards in the order");
    worst = std::max(worst, pos[c] - pos[p]);
  });
  return worst;
}

// Exact minimum topo_order_width over all topological orders, by
// backtracking over ready nodes with distance pruning.
inline int bandwidth_small(const Dag& g, int cap = kBandwidthCap) {
  const int n = g.node_count();
  if (n > cap) throw cap_exceeded_error("bandwidth_small", n, cap);
  if (n == 0) return 0;

  std::vector<int> indeg(n), pos(n, -1);
  for (int v = 0; v < n; ++v) indeg[v] = g.in_degree(v);
  int bestw = n;  // distance can never reach n

  auto walk = [&](auto&& self, int placed, int cur) -> void {
    if (cur >= bestw) return;
    // Any placed parent with a child still unplaced forces a distance of
    // at least (next position - parent position).
    for (int v = 0; v < n; ++v)
      if (pos[v] >= 0)
        for (int c : g.children(v))
          if (pos[c] < 0 && placed - pos[v] >= bestw) return;
    if (placed == n) {
      bestw = cur;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (pos[v] >= 0 || indeg[v] != 0) continue;
      int reach = cur;
      for (int p : g.parents(v)) reach = std::max(reach, placed - pos[p]);
      if (reach >= bestw) continue;
      pos[v] = placed;
      for (int c : g.children(v)) --indeg[c];
      self(self, placed + 1, reach);
      for (int c : g.children(v)) ++indeg[c];
      pos[v] = -1;
    }
  };
  walk(walk, 0, 0);
  return bestw;
}

// Blocks left to right, each block topologically sorted within itself.
// Cross-block arcs always run from a left block to the adjacent right one,
// so the result is a topological order of the whole graph.
inline std::vector<int> topo_order_from_ld(const Dag& g,
                                           const LayerDecomposition& d) {
  std::vector<int> order;
  const int n = g.node_count();
  for (auto it = d.layers.rbegin(); it != d.layers.rend(); ++it) {
    const NodeSet& block = it->block;
    std::vector<int> indeg(n, 0);
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    block.for_each([&](int v) {
      int deg = 0;
      for (int p : g.parents(v))
        if (block.contains(p)) ++deg;
      indeg[v] = deg;
      if (deg == 0) ready.push(v);
    });
    while (!ready.empty()) {
      int v = ready.top();
      ready.pop();
      order.push_back(v);
      for (int c : g.children(v))
        if (block.contains(c) && --indeg[c] == 0) ready.push(c);
    }
  }
  return order;
}

}  // namespace layerdag
