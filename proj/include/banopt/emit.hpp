#pragma once

#include <string>
#include <vector>

#include "banopt/dynamics.hpp"
#include "banopt/network.hpp"
#include "banopt/outputs.hpp"
#include "banopt/pipeline.hpp"

namespace banopt {

// Signed interaction digraph in DOT; inputs drawn as boxes.
std::string to_dot(const NetworkDef& net, int fan_in_cap = kDefaultFanInCap);

// {"network", "nodes", "attractors"} with configurations as 0/1 strings in
// node order. Byte-identical across runs on identical input.
std::string attractor_report_json(const NetworkDef& net,
                                  const std::vector<Attractor>& attractors);

// Same document extended with the pipeline block; "nodes" and "attractors"
// describe the optimized network.
std::string pipeline_report_json(const PipelineReport& report);

// "node: expr (delay d)"
std::string render_output_function(const std::string& node, const OutputFunction& fn);

}  // namespace banopt
