#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "banopt/network.hpp"
#include "banopt/outputs.hpp"

namespace banopt {

struct SynthesisInstance {
  std::vector<std::string> input_labels;
  // Target name -> required output function. When synthesizing from a seed,
  // target names are the seed nodes that realize them.
  std::map<std::string, OutputFunction> targets;
  std::optional<int> node_budget;
};

struct SynthesisResult {
  NetworkDef module;
  std::map<std::string, std::string> realization;  // target name -> node
  std::vector<std::string> rewrite_log;
  bool within_budget = true;
};

// Called after every individual rule firing with the intermediate module
// and a one-line description of what fired.
using RewriteObserver =
    std::function<void(const NetworkDef&, const std::string& event)>;

// Collapses pairs of nodes with identical output functions (same canonical
// table, same delay) onto one survivor, preferring protected nodes, then
// declaration order; references to the removed node are redirected.
NetworkDef merge_equivalent_nodes(const NetworkDef& module,
                                  const std::vector<std::string>& protected_nodes,
                                  int fan_in_cap = kDefaultFanInCap);

// Where one node's output table is another's shifted one update into the
// past, the later node becomes a plain wire onto the earlier one. Output
// functions of every node are preserved exactly.
NetworkDef delay_shift_rewrite(const NetworkDef& module,
                               const std::vector<std::string>& protected_nodes,
                               int fan_in_cap = kDefaultFanInCap);

// Replaces locals by their normal form wherever that shrinks them.
NetworkDef simplify_locals(const NetworkDef& module,
                           int fan_in_cap = kDefaultFanInCap);

// Removes every node that is neither protected nor a transitive influencer
// of a protected node.
NetworkDef eliminate_dead(const NetworkDef& module,
                          const std::vector<std::string>& protected_nodes,
                          int fan_in_cap = kDefaultFanInCap);

// Greedy fusion pipeline: merge, delay-shift, simplify and dead-node
// elimination iterated to a fixpoint over an acyclic seed module that
// realizes the targets at the given nodes. The realization is re-verified
// before returning.
SynthesisResult synthesize(const SynthesisInstance& instance, const NetworkDef& seed,
                           const std::vector<std::string>& realizing_nodes,
                           int fan_in_cap = kDefaultFanInCap,
                           const RewriteObserver& observer = {});

struct ExactBounds {
  int max_nodes = 3;
  int max_fanin = 2;
};

// Exhaustive search over layered module structures and all-essential local
// functions; returns the smallest module (node count, then arc count)
// realizing every target, or nothing within the bounds. Oracle scale only:
// at most 4 nodes, 3 inputs, target delays up to 3.
std::optional<NetworkDef> exact_synthesize(const SynthesisInstance& instance,
                                           const ExactBounds& bounds,
                                           int fan_in_cap = kDefaultFanInCap);

// Recomputes the realized output functions and checks equivalence and equal
// delay per target.
bool verify_synthesis(const SynthesisResult& result, const SynthesisInstance& instance,
                      int fan_in_cap = kDefaultFanInCap);

}  // namespace banopt
