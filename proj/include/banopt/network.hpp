#pragma once

#include <map>
#include <string>
#include <vector>

#include "banopt/expr.hpp"

namespace banopt {

// A Boolean automata network, or a module when `inputs` is nonempty. The
// declaration order of `nodes` fixes the configuration bit order everywhere.
struct NetworkDef {
  std::string name;
  std::vector<std::string> nodes;
  std::vector<std::string> inputs;
  std::vector<Expr> locals;  // parallel to nodes

  bool is_closed() const { return inputs.empty(); }
  std::size_t node_count() const { return nodes.size(); }
  int node_index(const std::string& id) const;
  int input_index(const std::string& label) const;
  const Expr& local(const std::string& id) const;

  // Structural checks: unique disjoint names, one local per node, locals
  // reference only declared nodes/inputs. Throws std::invalid_argument.
  void validate() const;

  friend bool operator==(const NetworkDef&, const NetworkDef&) = default;
};

// Partial map from input labels to node ids (a recursive wiring).
using Wiring = std::map<std::string, std::string>;

enum class ArcSign { Positive, Negative, Dual };

std::string to_string(ArcSign sign);

struct InteractionArc {
  VarRef source;  // Node or Input
  std::string target;
  ArcSign sign;

  friend bool operator==(const InteractionArc&, const InteractionArc&) = default;
};

// Influence digraph: arcs are the semantic influences (essential variables),
// signed by monotonicity of the target's local function in the source.
struct InteractionDigraph {
  std::vector<std::string> node_ids;
  std::vector<std::string> input_labels;
  std::vector<InteractionArc> arcs;
  std::vector<std::vector<int>> node_successors;  // node -> influenced nodes

  bool has_node_cycle() const;
  // Longest path among node vertices; requires acyclicity.
  int depth() const;
};

InteractionDigraph interaction_digraph(const NetworkDef& net,
                                       int fan_in_cap = kDefaultFanInCap);

struct PromiseViolation {
  std::string node;
  VarRef variable;

  friend bool operator==(const PromiseViolation&, const PromiseViolation&) = default;
};

// Empty iff every local function's syntactic variables are all essential.
std::vector<PromiseViolation> validate_promise(const NetworkDef& net,
                                               int fan_in_cap = kDefaultFanInCap);

bool is_acyclic(const NetworkDef& net, int fan_in_cap = kDefaultFanInCap);

// Substitutes node omega(a) for every wired input a, removing those inputs.
NetworkDef recursive_wiring(const NetworkDef& net, const Wiring& wiring);

// Per-node semantic equivalence; requires equal node and input sets.
bool semantically_equal(const NetworkDef& a, const NetworkDef& b,
                        int fan_in_cap = kDefaultFanInCap);

}  // namespace banopt
