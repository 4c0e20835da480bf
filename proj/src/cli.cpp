#include "banopt/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>

#include "banopt/emit.hpp"
#include "banopt/errors.hpp"
#include "banopt/netfile.hpp"
#include "banopt/pipeline.hpp"
#include "banopt/synthesis.hpp"
#include "banopt/unfold.hpp"

namespace banopt {

namespace {

void write_text(const std::string& path, const std::string& content,
                std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw BanError("cannot write '" + path + "'");
  file << content;
}

int cmd_analyze(const std::string& path, const std::string& dot_path, int fan_in_cap,
                std::ostream& out, std::ostream& err) {
  const NetworkFile file = load_network_file(path);
  const NetworkDef& net = file.network;
  const auto violations = validate_promise(net, fan_in_cap);
  const InteractionDigraph digraph = interaction_digraph(net, fan_in_cap);
  const bool acyclic = !digraph.has_node_cycle();
  const FvsResult fvs = minimum_fvs(digraph.node_successors);

  out << "nodes=" << net.node_count() << " inputs=" << net.inputs.size()
      << " promise=" << (violations.empty() ? "ok" : "violated")
      << " acyclic=" << (acyclic ? "yes" : "no") << " fvs=" << fvs.vertices.size()
      << (fvs.exact ? "" : " (heuristic)") << "\n";
  if (!dot_path.empty()) write_text(dot_path, to_dot(net, fan_in_cap), out);

  if (!violations.empty()) {
    for (const auto& v : violations) {
      err << "promise violation: node " << v.node << " has inessential variable "
          << v.variable.to_string() << "\n";
    }
    return 3;
  }
  return 0;
}

int cmd_attractors(const std::string& path, const std::string& json_path,
                   int max_state_bits, int fan_in_cap, std::ostream& out) {
  const NetworkFile file = load_network_file(path);
  const NetworkDef net = closed_network(file);
  const auto found = attractors(net, max_state_bits, fan_in_cap);

  out << "network " << net.name << ": nodes=" << net.node_count()
      << " attractors=" << found.size() << "\n";
  for (std::size_t i = 0; i < found.size(); ++i) {
    out << "attractor " << (i + 1) << ": length=" << found[i].length() << ":";
    for (std::size_t s = 0; s < found[i].states.size(); ++s) {
      out << (s == 0 ? " " : " -> ") << config_to_string(found[i].states[s], net);
    }
    out << "\n";
  }
  if (!json_path.empty()) {
    write_text(json_path, attractor_report_json(net, found), out);
  }
  return 0;
}

int cmd_outputs(const std::string& path, std::vector<std::string> nodes,
                int fan_in_cap, std::ostream& out) {
  const NetworkFile file = load_network_file(path);
  const NetworkDef& net = file.network;
  if (interaction_digraph(net, fan_in_cap).has_node_cycle()) {
    throw CyclicModuleError("output functions are defined for acyclic modules only");
  }
  if (nodes.empty()) nodes = net.nodes;
  for (const auto& id : nodes) {
    if (net.node_index(id) < 0) {
      throw ParseError("unknown node '" + id + "'", 0);
    }
  }
  const auto functions = output_functions(net, nodes, fan_in_cap);
  for (const auto& id : nodes) {
    out << render_output_function(id, functions.at(id)) << "\n";
  }
  return 0;
}

int cmd_optimize(const std::string& path, const std::string& json_path,
                 const std::string& dot_before, const std::string& dot_after,
                 bool verify_requested, int max_state_bits, int fan_in_cap,
                 std::ostream& out, std::ostream& err) {
  const NetworkFile file = load_network_file(path);
  const NetworkDef net = closed_network(file);
  PipelineOptions options;
  options.fan_in_cap = fan_in_cap;
  options.max_state_bits = max_state_bits;
  const PipelineReport report = optimize(net, options);

  out << "network " << report.original.name << ": " << report.nodes_before
      << " nodes\n";
  out << "cut set (size " << report.cut_set.size() << "):";
  for (const auto& node : report.cut_set) out << " " << node;
  out << (report.fvs_exact ? "" : " (heuristic)") << "\n";
  out << "output functions:\n";
  for (const auto& node : report.cut_set) {
    out << "  " << render_output_function(node, report.cut_outputs.at(node)) << "\n";
  }
  out << "rewrites:\n";
  for (const auto& line : report.rewrite_log) out << "  " << line << "\n";
  out << "final wiring:";
  for (const auto& [label, node] : report.final_wiring) {
    out << " " << label << "->" << node;
  }
  out << "\n";
  out << "optimized network " << report.optimized.name << ": " << report.nodes_after
      << " nodes (dynamics 2^" << report.reduction_exponent << " times smaller)\n";
  auto lengths = [](const std::vector<Attractor>& list) {
    std::string text;
    for (const auto& a : list) text += " " + std::to_string(a.length());
    return text;
  };
  if (report.attractors_before) {
    out << "attractors before: " << report.attractors_before->size() << " (lengths"
        << lengths(*report.attractors_before) << ")\n";
    out << "attractors after: " << report.attractors_after->size() << " (lengths"
        << lengths(*report.attractors_after) << ")\n";
    out << "isomorphic: " << (*report.verified ? "yes" : "NO") << "\n";
  } else {
    out << "attractors: skipped (state space exceeds cap)\n";
  }

  if (!json_path.empty()) write_text(json_path, pipeline_report_json(report), out);
  if (!dot_before.empty()) {
    write_text(dot_before, to_dot(report.original, fan_in_cap), out);
  }
  if (!dot_after.empty()) {
    write_text(dot_after, to_dot(report.optimized, fan_in_cap), out);
  }

  if (verify_requested) {
    if (!report.verified.has_value()) {
      err << "verification skipped: state space exceeds the cap\n";
      return 4;
    }
    if (!*report.verified) {
      err << "attractor isomorphism FAILED; this indicates a bug\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"attractor-preserving optimisation of Boolean automata networks",
               "ban-opt"};
  app.require_subcommand(1);

  std::string path;
  std::string json_path;
  std::string dot_path;
  std::string dot_before;
  std::string dot_after;
  std::vector<std::string> nodes;
  bool verify_requested = false;
  int max_state_bits = kDefaultMaxStateBits;
  int fan_in_cap = kDefaultFanInCap;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", path, "network file")->required();
    cmd->add_option("--max-fanin", fan_in_cap,
                    "fan-in cap for truth-table construction");
  };
  auto add_max_n = [&](CLI::App* cmd) {
    cmd->add_option("--max-n", max_state_bits,
                    "state-space cap (automata count for exhaustive dynamics)")
        ->envname("BAN_OPT_MAX_N");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "structure, promise check and feedback vertex set");
  add_common(analyze);
  analyze->add_option("--dot", dot_path, "write the signed interaction digraph");

  CLI::App* attractors_cmd =
      app.add_subcommand("attractors", "exhaustive attractors of a closed network");
  add_common(attractors_cmd);
  attractors_cmd->add_option("--json", json_path, "write the attractor report");
  add_max_n(attractors_cmd);

  CLI::App* outputs_cmd =
      app.add_subcommand("outputs", "output functions of an acyclic module");
  add_common(outputs_cmd);
  outputs_cmd->add_option("--nodes", nodes, "nodes to report (default: all)")
      ->delimiter(',');

  CLI::App* optimize_cmd = app.add_subcommand(
      "optimize", "unfold, synthesize and rewire into a smaller network");
  add_common(optimize_cmd);
  optimize_cmd->add_option("--json", json_path, "write the pipeline report");
  optimize_cmd->add_option("--dot-before", dot_before,
                           "write the original interaction digraph");
  optimize_cmd->add_option("--dot-after", dot_after,
                           "write the optimized interaction digraph");
  optimize_cmd->add_flag("--verify", verify_requested,
                         "fail unless brute-force attractor isomorphism holds");
  add_max_n(optimize_cmd);

  std::vector<const char*> argv;
  argv.push_back("ban-opt");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (app.got_subcommand(analyze)) {
      return cmd_analyze(path, dot_path, fan_in_cap, out, err);
    }
    if (app.got_subcommand(attractors_cmd)) {
      return cmd_attractors(path, json_path, max_state_bits, fan_in_cap, out);
    }
    if (app.got_subcommand(outputs_cmd)) {
      return cmd_outputs(path, nodes, fan_in_cap, out);
    }
    return cmd_optimize(path, json_path, dot_before, dot_after, verify_requested,
                        max_state_bits, fan_in_cap, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PromiseError& e) {
    for (const auto& [node, variable] : e.violations) {
      err << "promise violation: node " << node << " has inessential variable "
          << variable << "\n";
    }
    return 3;
  } catch (const FanInCapError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const StateCapError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const OpenInputsError& e) {
    err << "error: " << e.what() << "\n";
    return 5;
  } catch (const CyclicModuleError& e) {
    err << "error: " << e.what() << "\n";
    return 6;
  } catch (const BanError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace banopt
