#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "node_set.hpp"

namespace layerdag {

struct Arc {
  int parent;
  int child;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Immutable directed acyclic graph over labeled nodes. Construction
// rejects self loops, duplicate arcs and cycles. Adjacency lists are kept
// sorted so arc lookups are binary searches and iteration order is
// deterministic.
class Dag {
 public:
  Dag() = default;

  Dag(std::vector<std::string> labels, const std::vector<Arc>& arcs)
      : labels_(std::move(labels)),
        parents_(labels_.size()),
        children_(labels_.size()) {
    index_.reserve(labels_.size());
    for (int v = 0; v < int(labels_.size()); ++v) {
      if (!index_.emplace(labels_[v], v).second)
        throw format_error("duplicate node label '" + labels_[v] + "'");
    }
    const int n = int(labels_.size());
    for (const Arc& a : arcs) {
      if (a.parent < 0 || a.parent >= n || a.child < 0 || a.child >= n)
        throw format_error("arc endpoint out of range");
      if (a.parent == a.child) throw self_loop_error(labels_[a.parent]);
      children_[a.parent].push_back(a.child);
      parents_[a.child].push_back(a.parent);
    }
    for (int v = 0; v < n; ++v) {
      std::sort(children_[v].begin(), children_[v].end());
      std::sort(parents_[v].begin(), parents_[v].end());
      if (std::adjacent_find(children_[v].begin(), children_[v].end()) !=
          children_[v].end()) {
        int c = *std::adjacent_find(children_[v].begin(), children_[v].end());
        throw duplicate_arc_error(labels_[v], labels_[c]);
      }
      arc_count_ += int(children_[v].size());
    }
    check_acyclic();
  }

  static Dag from_labeled_arcs(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& arcs) {
    std::unordered_map<std::string, int> idx;
    for (int v = 0; v < int(labels.size()); ++v) idx.emplace(labels[v], v);
    std::vector<Arc> raw;
    raw.reserve(arcs.size());
    for (const auto& [p, c] : arcs) {
      auto ip = idx.find(p), ic = idx.find(c);
      if (ip == idx.end()) throw format_error("unknown node label '" + p + "'");
      if (ic == idx.end()) throw format_error("unknown node label '" + c + "'");
      raw.push_back({ip->second, ic->second});
    }
    return Dag(std::move(labels), raw);
  }

  int node_count() const { return int(labels_.size()); }
  int arc_count() const { return arc_count_; }

  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
      throw format_error("unknown node label '" + label + "'");
    return it->second;
  }
  bool has_label(const std::string& label) const {
    return index_.count(label) != 0;
  }

  const std::vector<int>& parents(int v) const { return parents_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int in_degree(int v) const { return int(parents_[v].size()); }
  int out_degree(int v) const { return int(children_[v].size()); }
  int degree(int v) const { return in_degree(v) + out_degree(v); }

  bool has_arc(int parent, int child) const {
    return std::binary_search(children_[parent].begin(),
                              children_[parent].end(), child);
  }

  NodeSet adjacent(int v) const {
    NodeSet s(node_count());
    for (int p : parents_[v]) s.insert(p);
    for (int c : children_[v]) s.insert(c);
    return s;
  }

  // Visits arcs in ascending (parent, child) order.
  template <typename F>
  void for_each_arc(F&& f) const {
    for (int v = 0; v < node_count(); ++v)
      for (int c : children_[v]) f(v, c);
  }

 private:
  void check_acyclic() const {
    const int n = node_count();
    std::vector<int> indeg(n);
    std::vector<char> done(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = in_degree(v);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
      if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      done[v] = 1;
      ++seen;
      for (int c : children_[v])
        if (--indeg[c] == 0) stack.push_back(c);
    }
    if (seen == n) return;
    // Every unprocessed node keeps an unprocessed parent, so walking
    // parent-ward from one of them must revisit a node; that names a
    // concrete arc on a cycle for the error.
    int cur = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v]) {
        cur = v;
        break;
      }
    std::vector<char> on_path(n, 0);
    while (true) {
      on_path[cur] = 1;
      int p = -1;
      for (int q : parents_[cur])
        if (!done[q]) {
          p = q;
          break;
        }
      if (on_path[p]) throw cycle_error(labels_[p], labels_[cur]);
      cur = p;
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> parents_, children_;
  int arc_count_ = 0;
};

// Topological order, smallest node index first among the ready set.
inline std::vector<int> topological_sort(const Dag& g) {
  const int n = g.node_count();
  std::vector<int> indeg(n);
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v) {
    indeg[v] = g.in_degree(v);
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : g.children(v))
      if (--indeg[c] == 0) ready.push(c);
  }
  return order;
}

// Nodes outside `placed` that touch at least one placed node.
inline NodeSet boundary_vars(const Dag& g, const NodeSet& placed) {
  NodeSet out(g.node_count());
  placed.for_each([&](int v) {
    for (int p : g.parents(v))
      if (!placed.contains(p)) out.insert(p);
    for (int c : g.children(v))
      if (!placed.contains(c)) out.insert(c);
  });
  return out;
}

struct NodeClassification {
  NodeSet chorded;  // has an arc jumping from a strict ancestor to a
                    // strict descendant
  NodeSet roots;    // no parents, and not chorded
  NodeSet branch;   // everything else
};

inline NodeClassification classify_nodes(const Dag& g) {
  const int n = g.node_count();
  std::vector<NodeSet> anc(n, NodeSet(n)), desc(n, NodeSet(n));
  std::vector<int> order = topological_sort(g);
  for (int v : order)
    for (int p : g.parents(v)) {
      anc[v] |= anc[p];
      anc[v].insert(p);
    }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int c : g.children(*it)) {
      desc[*it] |= desc[c];
      desc[*it].insert(c);
    }
  NodeClassification out{NodeSet(n), NodeSet(n), NodeSet(n)};
  g.for_each_arc([&](int a, int b) {
    // v is strictly between a and b exactly when v descends from a and b
    // descends from v.
    out.chorded |= desc[a] & anc[b];
  });
  for (int v = 0; v < n; ++v) {
    if (out.chorded.contains(v)) continue;
    if (g.in_degree(v) == 0)
      out.roots.insert(v);
    else
      out.branch.insert(v);
  }
  return out;
}

struct UndirectedGraph {
  int node_count = 0;
  std::vector<NodeSet> adj;
  int edge_count = 0;

  bool has_edge(int a, int b) const { return adj[a].contains(b); }
  void add_edge(int a, int b) {
    if (a == b || adj[a].contains(b)) return;
    adj[a].insert(b);
    adj[b].insert(a);
    ++edge_count;
  }
};

// Drop directions and marry co-parents: nodes sharing a child get an edge.
inline UndirectedGraph moralize(const Dag& g) {
  const int n = g.node_count();
  UndirectedGraph u{n, std::vector<NodeSet>(n, NodeSet(n)), 0};
  g.for_each_arc([&](int a, int b) { u.add_edge(a, b); });
  for (int v = 0; v < n; ++v) {
    const auto& ps = g.parents(v);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) u.add_edge(ps[i], ps[j]);
  }
  return u;
}

// Components of the underlying undirected graph, ordered by their smallest
// node index.
inline std::vector<NodeSet> weakly_connected_components(const Dag& g) {
  const int n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<NodeSet> comps;
  for (int v = 0; v < n; ++v) {
    if (seen[v]) continue;
    NodeSet comp(n);
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (int p : g.parents(u))
        if (!seen[p]) seen[p] = 1, stack.push_back(p);
      for (int c : g.children(u))
        if (!seen[c]) seen[c] = 1, stack.push_back(c);
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Subgraph over `keep`, labels preserved; node i of the result is the i-th
// smallest member of `keep`.
inline Dag induced_subgraph(const Dag& g, const NodeSet& keep) {
  std::vector<int> members = keep.to_vector();
  std::vector<int> local(g.node_count(), -1);
  std::vector<std::string> labels;
  labels.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    local[members[i]] = int(i);
    labels.push_back(g.label(members[i]));
  }
  std::vector<Arc> arcs;
  g.for_each_arc([&](int a, int b) {
    if (local[a] >= 0 && local[b] >= 0) arcs.push_back({local[a], local[b]});
  });
  return Dag(std::move(labels), arcs);
}

}  // namespace layerdag
