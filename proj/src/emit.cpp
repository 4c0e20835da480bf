#include "banopt/emit.hpp"

#include <json.hpp>

namespace banopt {

std::string to_dot(const NetworkDef& net, int fan_in_cap) {
  const InteractionDigraph digraph = interaction_digraph(net, fan_in_cap);
  std::string out = "digraph \"" + net.name + "\" {\n";
  for (const auto& id : digraph.node_ids) {
    out += "  \"" + id + "\";\n";
  }
  for (const auto& label : digraph.input_labels) {
    out += "  \"" + label + "\" [shape=box];\n";
  }
  for (const auto& arc : digraph.arcs) {
    out += "  \"" + arc.source.label + "\" -> \"" + arc.target + "\" [label=\"" +
           to_string(arc.sign) + "\"];\n";
  }
  out += "}\n";
  return out;
}

namespace {

nlohmann::ordered_json attractors_json(const NetworkDef& net,
                                       const std::vector<Attractor>& attractors) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& attractor : attractors) {
    nlohmann::ordered_json states = nlohmann::ordered_json::array();
    for (Config state : attractor.states) {
      states.push_back(config_to_string(state, net));
    }
    list.push_back({{"length", attractor.length()}, {"states", std::move(states)}});
  }
  return list;
}

}  // namespace

std::string attractor_report_json(const NetworkDef& net,
                                  const std::vector<Attractor>& attractors) {
  nlohmann::ordered_json doc;
  doc["network"] = net.name;
  doc["nodes"] = net.nodes;
  doc["attractors"] = attractors_json(net, attractors);
  return doc.dump(2) + "\n";
}

std::string pipeline_report_json(const PipelineReport& report) {
  nlohmann::ordered_json doc;
  doc["network"] = report.original.name;
  doc["nodes"] = report.optimized.nodes;
  if (report.attractors_after) {
    doc["attractors"] = attractors_json(report.optimized, *report.attractors_after);
  }
  nlohmann::ordered_json pipeline;
  pipeline["before"] = report.nodes_before;
  pipeline["after"] = report.nodes_after;
  pipeline["T"] = report.cut_set;
  nlohmann::ordered_json node_map = nlohmann::ordered_json::object();
  for (const auto& node : report.cut_set) node_map[node] = report.node_map.at(node);
  pipeline["h"] = std::move(node_map);
  pipeline["rewrites"] = report.rewrite_log;
  if (report.verified) {
    pipeline["verified"] = *report.verified;
  } else {
    pipeline["verified"] = nullptr;
  }
  doc["pipeline"] = std::move(pipeline);
  return doc.dump(2) + "\n";
}

std::string render_output_function(const std::string& node,
                                   const OutputFunction& fn) {
  return node + ": " + fn.expr.to_string() + " (delay " + std::to_string(fn.delay) +
         ")";
}

}  // namespace banopt
