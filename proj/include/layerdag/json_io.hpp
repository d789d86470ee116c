#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "dag.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "solver.hpp"

namespace layerdag {

// {"blocks":[{"T":[names],"S":[names]},...],"width":w}; array index 0 is
// the rightmost block, names sorted within each set.
inline nlohmann::ordered_json decomposition_to_json(
    const Dag& g, const LayerDecomposition& d) {
  auto names = [&](const NodeSet& s) {
    std::vector<std::string> out;
    s.for_each([&](int v) { out.push_back(g.label(v)); });
    std::sort(out.begin(), out.end());
    return out;
  };
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const Layer& l : d.layers) {
    nlohmann::ordered_json b;
    b["T"] = names(l.block);
    b["S"] = names(l.interface);
    blocks.push_back(std::move(b));
  }
  nlohmann::ordered_json j;
  j["blocks"] = std::move(blocks);
  j["width"] = width(d);
  return j;
}

inline LayerDecomposition decomposition_from_json(const Dag& g,
                                                  const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw format_error("decomposition JSON needs a \"blocks\" array");
  const int n = g.node_count();
  LayerDecomposition d;
  for (const auto& b : j["blocks"]) {
    if (!b.is_object() || !b.contains("T") || !b.contains("S"))
      throw format_error("each block needs \"T\" and \"S\" name arrays");
    Layer l{NodeSet(n), NodeSet(n)};
    for (const auto& name : b["T"]) {
      if (!name.is_string()) throw format_error("node names must be strings");
      l.block.insert(g.index_of(name.get<std::string>()));
    }
    for (const auto& name : b["S"]) {
      if (!name.is_string()) throw format_error("node names must be strings");
      l.interface.insert(g.index_of(name.get<std::string>()));
    }
    d.layers.push_back(std::move(l));
  }
  if (!j.contains("width") || !j["width"].is_number_integer())
    throw format_error("decomposition JSON needs an integer \"width\"");
  if (j["width"].get<int>() != width(d))
    throw format_error("stated width " + j["width"].dump() +
                       " does not match the blocks (actual " +
                       std::to_string(width(d)) + ")");
  return d;
}

inline nlohmann::ordered_json solve_result_to_json(const Dag& g,
                                                   const SolveResult& r) {
  nlohmann::ordered_json j;
  if (r.width)
    j["width"] = *r.width;
  else
    j["width"] = nullptr;
  j["optimal"] = r.optimal;
  j["nodes_expanded"] = r.nodes_expanded;
  j["branch_nodes"] = r.branch_nodes;
  if (r.best)
    j["decomposition"] = decomposition_to_json(g, *r.best);
  else
    j["decomposition"] = nullptr;
  return j;
}

inline nlohmann::ordered_json violation_to_json(const Dag& g,
                                                const Violation& v) {
  nlohmann::ordered_json j;
  j["ok"] = false;
  j["condition"] = condition_name(v.condition);
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  for (int w : v.witnesses) witnesses.push_back(g.label(w));
  j["witnesses"] = std::move(witnesses);
  j["message"] = v.message;
  return j;
}

inline ThreePartitionInstance three_partition_from_json(
    const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("sizes") || !j["sizes"].is_array() ||
      !j.contains("bound") || !j["bound"].is_number_integer())
    throw format_error(
        "instance JSON needs {\"sizes\":[ints],\"bound\":int}");
  ThreePartitionInstance inst;
  for (const auto& s : j["sizes"]) {
    if (!s.is_number_integer())
      throw format_error("element sizes must be integers");
    inst.sizes.push_back(s.get<long long>());
  }
  inst.bound = j["bound"].get<long long>();
  return inst;
}

inline nlohmann::ordered_json roles_to_json(const ReductionLayout& layout) {
  const Dag& g = layout.graph;
  auto names = [&](const std::vector<int>& vs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int v : vs) arr.push_back(g.label(v));
    return arr;
  };
  auto nested = [&](const std::vector<std::vector<int>>& groups) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& vs : groups) arr.push_back(names(vs));
    return arr;
  };
  nlohmann::ordered_json j;
  j["c"] = layout.c;
  j["k"] = layout.k;
  j["tip"] = g.label(layout.tip);
  j["tail"] = names(layout.tail);
  j["spine"] = nested(layout.spine);
  j["head"] = names(layout.head);
  j["arms"] = nested(layout.arms);
  j["hands"] = nested(layout.hands);
  return j;
}

}  // namespace layerdag
