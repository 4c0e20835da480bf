#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "banopt/dynamics.hpp"
#include "banopt/network.hpp"
#include "banopt/outputs.hpp"
#include "banopt/unfold.hpp"

namespace banopt {

struct PipelineOptions {
  int fan_in_cap = kDefaultFanInCap;
  int max_state_bits = kDefaultMaxStateBits;
};

struct PipelineReport {
  NetworkDef original;
  NetworkDef unfolded;     // acyclic module cut out of the original
  NetworkDef synthesized;  // smaller module realizing the cut outputs
  NetworkDef optimized;    // synthesized module closed by the final wiring

  std::vector<std::string> cut_set;  // declaration order
  std::map<std::string, OutputFunction> cut_outputs;
  std::map<std::string, std::string> node_map;  // h: cut node -> optimized node
  Wiring wiring;                                // fresh input -> cut node
  Wiring final_wiring;                          // fresh input -> optimized node
  std::vector<std::string> rewrite_log;
  bool fvs_exact = true;

  int nodes_before = 0;
  int nodes_after = 0;
  int reduction_exponent = 0;

  // Present when both networks fit under the state-space cap.
  std::optional<std::vector<Attractor>> attractors_before;
  std::optional<std::vector<Attractor>> attractors_after;
  std::optional<bool> verified;
};

// For every cut node, equal delay and (after renaming inputs by
// `input_map`) an equivalent output function on both sides.
bool check_theorem_hypotheses(const NetworkDef& module,
                              const NetworkDef& optimized_module,
                              const std::vector<std::string>& cut_set,
                              const std::map<std::string, std::string>& node_map,
                              const std::map<std::string, std::string>& input_map,
                              int fan_in_cap = kDefaultFanInCap);

// unfold -> output functions -> synthesis -> rewiring, with the resulting
// attractor comparison recorded when exhaustive dynamics fit under the cap.
PipelineReport optimize(const NetworkDef& network, const PipelineOptions& options = {});

// Recomputes both attractor sets and the trace-matching bijection.
bool verify(const NetworkDef& network, const PipelineReport& report,
            int max_state_bits = kDefaultMaxStateBits);

}  // namespace banopt
