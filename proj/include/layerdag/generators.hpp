#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dag.hpp"
#include "errors.hpp"

namespace layerdag {

namespace detail {

// Segments become consecutive directed cliques: each clique is one
// segment plus the previous clique's source, which serves as its sink.
// Within a clique, arcs run from later list positions to earlier ones, so
// element 0 is the sink and the last element is the source.
inline void append_clique_chain(const std::vector<std::vector<int>>& segments,
                                int tip, std::vector<Arc>& arcs) {
  int carry = tip;  // sink of the next clique
  for (const std::vector<int>& seg : segments) {
    std::vector<int> clique;
    clique.reserve(seg.size() + 1);
    clique.push_back(carry);
    clique.insert(clique.end(), seg.begin(), seg.end());
    for (std::size_t i = 1; i < clique.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) arcs.push_back({clique[i], clique[j]});
    carry = clique.back();
  }
}

}  // namespace detail

inline Dag chain_of_cliques(const std::vector<int>& segment_sizes) {
  if (segment_sizes.empty())
    throw invalid_instance_error("chain_of_cliques: no segments");
  std::vector<std::string> labels{"tip"};
  std::vector<std::vector<int>> segments;
  for (std::size_t s = 0; s < segment_sizes.size(); ++s) {
    if (segment_sizes[s] <= 0)
      throw invalid_instance_error("chain_of_cliques: segment " +
                                   std::to_string(s) + " is empty");
    std::vector<int> seg;
    for (int i = 1; i <= segment_sizes[s]; ++i) {
      seg.push_back(int(labels.size()));
      labels.push_back("W" + std::to_string(s) + "#" + std::to_string(i));
    }
    segments.push_back(std::move(seg));
  }
  std::vector<Arc> arcs;
  detail::append_clique_chain(segments, 0, arcs);
  return Dag(std::move(labels), arcs);
}

// True iff the arcs among {tip} ∪ segments are exactly the chained
// directed cliques the segment lists describe.
inline bool is_chain_of_cliques(const Dag& g, int tip,
                                const std::vector<std::vector<int>>& segments) {
  std::vector<char> member(g.node_count(), 0);
  member[tip] = 1;
  long long expected = 0;
  for (const auto& seg : segments) {
    for (int v : seg) member[v] = 1;
    const long long s = (long long)(seg.size()) + 1;
    expected += s * (s - 1) / 2;
  }
  long long induced = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    if (!member[v]) continue;
    for (int c : g.children(v))
      if (member[c]) ++induced;
  }
  if (induced != expected) return false;
  int carry = tip;
  for (const auto& seg : segments) {
    std::vector<int> clique;
    clique.push_back(carry);
    clique.insert(clique.end(), seg.begin(), seg.end());
    for (std::size_t i = 1; i < clique.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!g.has_arc(clique[i], clique[j])) return false;
    carry = clique.back();
  }
  return true;
}

struct ThreePartitionInstance {
  std::vector<long long> sizes;
  long long bound = 0;

  int m() const { return int(sizes.size()) / 3; }

  void check() const {
    if (sizes.empty() || sizes.size() % 3 != 0)
      throw invalid_instance_error(
          "element count must be a positive multiple of 3");
    long long sum = 0;
    for (long long s : sizes) {
      if (4 * s <= bound || 2 * s >= bound)
        throw invalid_instance_error(
            "element size " + std::to_string(s) +
            " outside the strict (bound/4, bound/2) range");
      sum += s;
    }
    if (sum != (long long)m() * bound)
      throw invalid_instance_error("element sizes sum to " +
                                   std::to_string(sum) + ", expected " +
                                   std::to_string((long long)m() * bound));
  }
};

// The hardness gadget: a spine of shrinking cliques whose slack blocks
// must absorb exactly three hands each, which is possible exactly when
// the instance has a valid 3-partition.
struct ReductionLayout {
  Dag graph;
  long long c = 0, k = 0;
  int tip = 0;
  std::vector<int> tail;                // k nodes right of the spine
  std::vector<std::vector<int>> spine;  // shrinking middle segments
  std::vector<int> head;                // k nodes left of the spine
  std::vector<std::vector<int>> arms;   // arms[e][j] = j-th node from the hand
  std::vector<std::vector<int>> hands;  // directed cliques, sink first
};

inline ReductionLayout reduction_graph(const ThreePartitionInstance& inst) {
  inst.check();
  const long long m = inst.m();
  const long long c = 3 * m * m + 9 * m;
  const long long cd = c * inst.bound;
  const long long k = 2 * (6 * m - 3 + cd) + 1;

  ReductionLayout out;
  out.c = c;
  out.k = k;

  std::vector<std::string> labels;
  auto add = [&](std::string label) {
    labels.push_back(std::move(label));
    return int(labels.size()) - 1;
  };

  out.tip = add("tip");
  for (long long j = 1; j <= k; ++j) out.tail.push_back(add("P#" + std::to_string(j)));
  for (long long i = 1; i <= m; ++i) {
    const long long size = k - (6 * i - 3) - cd;
    if (size <= 0)
      throw invalid_instance_error("degenerate spine segment");
    std::vector<int> seg;
    for (long long j = 1; j <= size; ++j)
      seg.push_back(add("B" + std::to_string(i) + "#" + std::to_string(j)));
    out.spine.push_back(std::move(seg));
  }
  for (long long j = 1; j <= k; ++j) out.head.push_back(add("H#" + std::to_string(j)));

  for (std::size_t e = 0; e < inst.sizes.size(); ++e) {
    std::vector<int> arm;
    for (long long j = 1; j <= m; ++j)
      arm.push_back(add("t" + std::to_string(e + 1) + "," + std::to_string(j)));
    out.arms.push_back(std::move(arm));
    std::vector<int> hand;
    const long long hand_size = c * inst.sizes[e];
    for (long long j = 1; j <= hand_size; ++j)
      hand.push_back(
          add("hand" + std::to_string(e + 1) + "#" + std::to_string(j)));
    out.hands.push_back(std::move(hand));
  }

  std::vector<Arc> arcs;
  {
    long long body_arcs = (k + 1) * k / 2 * 2;  // tail and head cliques
    for (const auto& seg : out.spine) {
      const long long s = (long long)(seg.size()) + 1;
      body_arcs += s * (s - 1) / 2;
    }
    long long hand_arcs = 0;
    for (const auto& hand : out.hands) {
      const long long s = hand.size();
      hand_arcs += s * (s - 1) / 2;
    }
    arcs.reserve(body_arcs + hand_arcs + (m + 1) * (long long)out.arms.size());
  }
  std::vector<std::vector<int>> body_segments;
  body_segments.push_back(out.tail);
  for (const auto& seg : out.spine) body_segments.push_back(seg);
  body_segments.push_back(out.head);
  detail::append_clique_chain(body_segments, out.tip, arcs);

  for (std::size_t e = 0; e < out.arms.size(); ++e) {
    const std::vector<int>& arm = out.arms[e];
    const std::vector<int>& hand = out.hands[e];
    // Head feeds the arm's far node; the arm chains down toward the hand
    // and ends at the hand clique's source.
    arcs.push_back({out.head.front(), arm.back()});
    for (std::size_t j = arm.size(); j-- > 1;)
      arcs.push_back({arm[j], arm[j - 1]});
    arcs.push_back({arm.front(), hand.back()});
    for (std::size_t i = 1; i < hand.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) arcs.push_back({hand[i], hand[j]});
  }

  out.graph = Dag(std::move(labels), arcs);
  return out;
}

inline Dag family(const std::string& name, int param) {
  std::vector<std::string> labels;
  std::vector<Arc> arcs;
  if (name == "star") {
    if (param < 2) throw param_too_small_error(name, param, 2);
    labels.push_back("R");
    for (int i = 1; i < param; ++i) {
      labels.push_back("L" + std::to_string(i));
      arcs.push_back({0, i});
    }
  } else if (name == "chord_chain") {
    if (param < 3) throw param_too_small_error(name, param, 3);
    for (int i = 1; i <= param; ++i) labels.push_back("v" + std::to_string(i));
    for (int i = 0; i + 1 < param; ++i) arcs.push_back({i, i + 1});
    arcs.push_back({0, param - 1});
  } else if (name == "bipartite_stack" || name == "bipartite") {
    if (param < 1) throw param_too_small_error(name, param, 1);
    const int w = param;
    for (int i = 1; i <= w; ++i) labels.push_back("a" + std::to_string(i));
    for (int i = 1; i <= w; ++i) labels.push_back("b" + std::to_string(i));
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < w; ++j) arcs.push_back({i, w + j});
    if (name == "bipartite_stack") {
      labels.push_back("X");
      for (int j = 0; j < w; ++j) arcs.push_back({w + j, 2 * w});
    }
  } else {
    throw unknown_family_error(name);
  }
  return Dag(std::move(labels), arcs);
}

// Seeded uniform-ish random DAG: a shuffled node order, then each forward
// pair kept with probability p. The generator and both draws are spelled
// out (no distribution adapters) so the same seed gives the same graph on
// every platform.
inline Dag random_dag(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = int(rng() % std::uint64_t(i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<Arc> arcs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double r = double(rng() >> 11) * 0x1.0p-53;
      if (r < p) arcs.push_back({perm[a], perm[b]});
    }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return Dag(std::move(labels), arcs);
}

}  // namespace layerdag
