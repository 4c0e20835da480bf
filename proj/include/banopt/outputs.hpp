#pragma once

#include <map>
#include <string>
#include <vector>

#include "banopt/network.hpp"

namespace banopt {

// "Build the output of `node` with `added_delay` extra updates of latency."
struct Requirement {
  std::string node;
  int added_delay = 0;

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

// The Boolean function of delayed inputs giving a node's state once the
// initial configuration has washed out. `delay` is the largest essential
// delay index; constants get delay 0. The canonical table is cached so
// equivalence checks never have to rebuild it from the expression.
struct OutputFunction {
  Expr expr;  // normalized: delayed-input variables only, all essential
  TruthTable table;
  int delay = 0;
};

// Normalizes an arbitrary expression over delayed inputs into an
// OutputFunction with a consistent (expr, table, delay) triple.
OutputFunction make_output_function(const Expr& raw,
                                    int fan_in_cap = kDefaultFanInCap);

// Least fixpoint of backward influence propagation from (node, 0), sorted
// by (delay, declaration order). The module must be acyclic.
std::vector<Requirement> requirements(const NetworkDef& module,
                                      const std::string& node,
                                      int fan_in_cap = kDefaultFanInCap);

// Substitution construction: inputs met at accumulated delay d become
// delay-(d+1) variables, node references inline the referenced local at
// d+1; the composed circuit is then normalized and the minimal delay read
// off the essential variables.
OutputFunction output_circuit(const NetworkDef& module, const std::string& node,
                              int fan_in_cap = kDefaultFanInCap);

// Output circuits of every node, sharing one expansion pass.
std::vector<OutputFunction> all_output_circuits(const NetworkDef& module,
                                                int fan_in_cap = kDefaultFanInCap);

std::map<std::string, OutputFunction> output_functions(
    const NetworkDef& module, const std::vector<std::string>& nodes,
    int fan_in_cap = kDefaultFanInCap);

}  // namespace banopt
