#pragma once

#include <stdexcept>
#include <string>

namespace layerdag {

// Base class for everything this library throws on bad input.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Graph construction / parsing.
struct cycle_error : error {
  cycle_error(std::string parent_label, std::string child_label)
      : error("cycle detected: arc '" + parent_label + " -> " + child_label +
              "' closes a cycle"),
        parent(std::move(parent_label)),
        child(std::move(child_label)) {}
  std::string parent, child;
};

struct self_loop_error : error {
  explicit self_loop_error(const std::string& label)
      : error("self loop on node '" + label + "'") {}
};

struct duplicate_arc_error : error {
  duplicate_arc_error(const std::string& parent, const std::string& child)
      : error("duplicate arc '" + parent + " -> " + child + "'") {}
};

struct format_error : error {
  explicit format_error(const std::string& what) : error(what) {}
};

// Decomposition operations.
struct scope_error : error {
  explicit scope_error(const std::string& what) : error(what) {}
};

struct not_boundary_error : error {
  explicit not_boundary_error(const std::string& label)
      : error("node '" + label +
              "' has no inserted neighbor; insertion set is undefined") {}
};

// Exact metrics / oracle guard rails.
struct cap_exceeded_error : error {
  cap_exceeded_error(const std::string& op, int nodes, int cap)
      : error(op + ": graph has " + std::to_string(nodes) +
              " nodes, exact computation capped at " + std::to_string(cap)) {}
};

// Generators.
struct unknown_family_error : error {
  explicit unknown_family_error(const std::string& name)
      : error("unknown graph family '" + name + "'") {}
};

struct param_too_small_error : error {
  param_too_small_error(const std::string& family, long long param,
                        long long minimum)
      : error("family '" + family + "' needs param >= " +
              std::to_string(minimum) + ", got " + std::to_string(param)) {}
};

struct invalid_instance_error : error {
  explicit invalid_instance_error(const std::string& what) : error(what) {}
};

// Metrics order arguments.
struct not_permutation_error : error {
  explicit not_permutation_error(const std::string& what) : error(what) {}
};

struct not_topological_error : error {
  explicit not_topological_error(const std::string& what) : error(what) {}
};

}  // namespace layerdag
