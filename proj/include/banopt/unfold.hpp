#pragma once

#include <map>
#include <string>
#include <vector>

#include "banopt/network.hpp"

namespace banopt {

struct FvsOptions {
  // Largest vertex count handled by the exact branch-and-bound; bigger
  // graphs fall back to a heuristic and the result is flagged inexact.
  int exact_cap = 30;
};

struct FvsResult {
  std::vector<int> vertices;  // ascending
  bool exact = true;
};

// Minimum feedback vertex set of a digraph given as successor lists.
// Self-loop vertices are always included. Ties between minimum sets break
// to the lexicographically largest index sequence, which keeps the cut
// deterministic under the declaration order.
FvsResult minimum_fvs(const std::vector<std::vector<int>>& successors,
                      const FvsOptions& options = {});

struct UnfoldResult {
  NetworkDef module;                                // acyclic, one input per cut node
  Wiring wiring;                                    // fresh input -> cut node
  std::vector<std::string> cut_nodes;               // declaration order
  std::map<std::string, std::string> fresh_inputs;  // cut node -> input label
  bool fvs_exact = true;
};

// Cuts a minimum feedback vertex set out of a closed network: every
// occurrence of a cut node becomes a fresh input, and the wiring undoes the
// cut. The caller is responsible for the essential-variables promise.
UnfoldResult unfold(const NetworkDef& ban, int fan_in_cap = kDefaultFanInCap);

// is_acyclic(module) and rewiring reproduces the source network per-node.
bool verify_unfolding(const NetworkDef& ban, const UnfoldResult& result,
                      int fan_in_cap = kDefaultFanInCap);

}  // namespace banopt
