#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dag.hpp"
#include "errors.hpp"

namespace layerdag {

// Text format: one "parent child" pair per line, '#' lines are comments.
// A first line of the form "#nodes: a b c" pins the node set and its order,
// which also captures isolated nodes. Without it, nodes are numbered by
// first appearance.
inline Dag parse_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  bool pinned = false;
  auto intern = [&](const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    if (pinned)
      throw format_error("node '" + label + "' missing from #nodes header");
    index.emplace(label, int(labels.size()));
    labels.push_back(label);
    return int(labels.size()) - 1;
  };

  std::vector<std::pair<std::string, std::string>> arcs;
  std::string line;
  bool first = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (first && line.rfind("#nodes:", 0) == 0) {
      std::istringstream hs(line.substr(7));
      std::string label;
      while (hs >> label) intern(label);
      pinned = true;
      first = false;
      continue;
    }
    first = false;
    std::istringstream ls(line);
    std::string parent, child, extra;
    if (!(ls >> parent)) continue;  // blank line
    if (parent[0] == '#') continue;
    if (!(ls >> child) || (ls >> extra))
      throw format_error("line " + std::to_string(line_no) +
                         ": expected 'parent child'");
    intern(parent);
    intern(child);
    arcs.emplace_back(parent, child);
  }
  return Dag::from_labeled_arcs(std::move(labels), arcs);
}

inline Dag parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

// Always emits the #nodes header and arcs in ascending index order, so
// parse(write(g)) reproduces g exactly.
inline void write_edge_list(const Dag& g, std::ostream& out) {
  out << "#nodes:";
  for (int v = 0; v < g.node_count(); ++v) out << ' ' << g.label(v);
  out << '\n';
  g.for_each_arc(
      [&](int p, int c) { out << g.label(p) << ' ' << g.label(c) << '\n'; });
}

inline std::string write_edge_list(const Dag& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

}  // namespace layerdag
