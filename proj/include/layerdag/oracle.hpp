#pragma once

#include <cstdint>
#include <vector>

#include "dag.hpp"
#include "decomposition.hpp"
#include "errors.hpp"

namespace layerdag {

namespace detail {

inline NodeSet set_from_mask(int n, std::uint32_t mask) {
  NodeSet s(n);
  while (mask) {
    s.insert(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

template <typename F>
struct DecompositionScan {
  const Dag& g;
  NodeSet scope;
  F& visit;
  std::vector<std::uint32_t> blocks, interfaces;

  // Blocks chosen rightmost-first; within each step the candidate subsets
  // of the remaining nodes ascend numerically.
  void partitions(std::uint32_t remaining) {
    if (!remaining) {
      interfaces.assign(blocks.size(), 0);
      pick_interface(0);
      return;
    }
    for (std::uint32_t t = (0 - remaining) & remaining;;
         t = (t - remaining) & remaining) {
      blocks.push_back(t);
      partitions(remaining & ~t);
      blocks.pop_back();
      if (t == remaining) break;
    }
  }

  void pick_interface(std::size_t i) {
    if (i == blocks.size()) {
      emit();
      return;
    }
    const std::uint32_t b = blocks[i];
    std::uint32_t s = 0;
    do {
      interfaces[i] = s;
      pick_interface(i + 1);
      s = (s - b) & b;
    } while (s != 0);
  }

  void emit() {
    const int n = g.node_count();
    LayerDecomposition d;
    d.layers.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
      d.layers.push_back(
          {set_from_mask(n, blocks[i]), set_from_mask(n, interfaces[i])});
    if (!validate(g, d, scope)) visit(d);
  }
};

}  // namespace detail

// Visits every valid layer decomposition of g, in a fixed deterministic
// order. Deliberately brute force — every ordered partition and every
// interface subset is generated and filtered — so it can serve as ground
// truth for the search-based modules.
template <typename F>
void for_each_decomposition(const Dag& g, F&& visit) {
  const int n = g.node_count();
  if (n > 30) throw cap_exceeded_error("for_each_decomposition", n, 30);
  if (n == 0) {
    visit(LayerDecomposition{});
    return;
  }
  detail::DecompositionScan<F> scan{g, NodeSet::full(n), visit, {}, {}};
  scan.partitions(n == 32 ? ~0u : ((1u << n) - 1));
}

inline constexpr int kDefaultOracleCap = 8;

inline std::vector<LayerDecomposition> enumerate_decompositions(
    const Dag& g, int max_nodes = kDefaultOracleCap) {
  if (g.node_count() > max_nodes)
    throw cap_exceeded_error("enumerate_decompositions", g.node_count(),
                             max_nodes);
  std::vector<LayerDecomposition> out;
  for_each_decomposition(g, [&](const LayerDecomposition& d) {
    out.push_back(d);
  });
  return out;
}

inline int oracle_layerwidth(const Dag& g,
                             int max_nodes = kDefaultOracleCap) {
  if (g.node_count() == 0) return 0;
  if (g.node_count() > max_nodes)
    throw cap_exceeded_error("oracle_layerwidth", g.node_count(), max_nodes);
  int best = g.node_count() + 1;
  for_each_decomposition(g, [&](const LayerDecomposition& d) {
    int w = width(d);
    if (w < best) best = w;
  });
  return best;
}

}  // namespace layerdag
