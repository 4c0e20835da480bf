#include "banopt/pipeline.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "banopt/errors.hpp"
#include "banopt/synthesis.hpp"

namespace banopt {

namespace {

// The table with every input label renamed, rows permuted to the new
// variable order.
TruthTable relabel_inputs(const TruthTable& table,
                          const std::map<std::string, std::string>& rename) {
  const std::size_t n = table.var_count();
  std::vector<VarRef> renamed;
  renamed.reserve(n);
  for (const VarRef& v : table.vars()) {
    renamed.push_back(VarRef::delayed_input(rename.at(v.label), v.delay));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return renamed[a] < renamed[b]; });
  std::vector<VarRef> vars;
  vars.reserve(n);
  for (std::size_t p = 0; p < n; ++p) vars.push_back(renamed[order[p]]);
  std::vector<bool> bits(table.row_count());
  for (std::uint64_t row = 0; row < table.row_count(); ++row) {
    std::uint64_t permuted = 0;
    for (std::size_t p = 0; p < n; ++p) {
      permuted |= ((row >> order[p]) & 1) << p;
    }
    bits[permuted] = table.bit(row);
  }
  return TruthTable(std::move(vars), bits);
}

}  // namespace

bool check_theorem_hypotheses(const NetworkDef& module,
                              const NetworkDef& optimized_module,
                              const std::vector<std::string>& cut_set,
                              const std::map<std::string, std::string>& node_map,
                              const std::map<std::string, std::string>& input_map,
                              int fan_in_cap) {
  std::set<std::string> images;
  for (const auto& node : cut_set) {
    auto it = node_map.find(node);
    if (it == node_map.end() || optimized_module.node_index(it->second) < 0) {
      throw std::invalid_argument("node map must send the cut set into the module");
    }
    if (!images.insert(it->second).second) {
      throw std::invalid_argument("node map is not injective");
    }
  }
  if (input_map.size() != module.inputs.size()) {
    throw std::invalid_argument("input map must be total");
  }
  std::map<std::string, std::string> inverse;
  for (const auto& [from, to] : input_map) {
    if (module.input_index(from) < 0 || optimized_module.input_index(to) < 0) {
      throw std::invalid_argument("input map must relate the two input sets");
    }
    if (!inverse.emplace(to, from).second) {
      throw std::invalid_argument("input map is not injective");
    }
  }

  for (const auto& node : cut_set) {
    const OutputFunction ours = output_circuit(module, node, fan_in_cap);
    const OutputFunction theirs =
        output_circuit(optimized_module, node_map.at(node), fan_in_cap);
    if (ours.delay != theirs.delay) return false;
    // Pull the optimized side's inputs back through the renaming.
    if (!(ours.table == relabel_inputs(theirs.table, inverse))) return false;
  }
  return true;
}

PipelineReport optimize(const NetworkDef& network, const PipelineOptions& options) {
  network.validate();
  if (!network.is_closed()) {
    throw OpenInputsError("the optimisation pipeline expects a closed network");
  }
  const auto violations = validate_promise(network, options.fan_in_cap);
  if (!violations.empty()) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string message = "inessential variables present:";
    for (const auto& v : violations) {
      pairs.emplace_back(v.node, v.variable.to_string());
      message += " (" + v.node + ", " + v.variable.to_string() + ")";
    }
    throw PromiseError(message, std::move(pairs));
  }

  PipelineReport report;
  report.original = network;
  report.nodes_before = static_cast<int>(network.node_count());

  UnfoldResult unfolded = unfold(network, options.fan_in_cap);
  report.unfolded = unfolded.module;
  report.cut_set = unfolded.cut_nodes;
  report.wiring = unfolded.wiring;
  report.fvs_exact = unfolded.fvs_exact;
  report.cut_outputs =
      output_functions(unfolded.module, unfolded.cut_nodes, options.fan_in_cap);

  SynthesisInstance instance;
  instance.input_labels = unfolded.module.inputs;
  instance.targets = report.cut_outputs;
  SynthesisResult synthesis = synthesize(instance, unfolded.module,
                                         unfolded.cut_nodes, options.fan_in_cap);
  report.rewrite_log = synthesis.rewrite_log;

  // Cut nodes merged away during synthesis come back as copies of their
  // survivor so the node map stays a bijection with equal output delays; a
  // plain wire would shift the delay by one.
  NetworkDef module = synthesis.module;
  for (const auto& node : unfolded.cut_nodes) {
    const std::string& survivor = synthesis.realization.at(node);
    if (survivor == node) continue;
    module.nodes.push_back(node);
    module.locals.push_back(module.local(survivor));
    synthesis.realization[node] = node;
    report.rewrite_log.push_back("alias " + node + " = " + survivor);
  }
  report.synthesized = module;

  for (const auto& node : unfolded.cut_nodes) report.node_map[node] = node;
  std::map<std::string, std::string> input_map;
  for (const auto& label : unfolded.module.inputs) input_map[label] = label;

  if (!check_theorem_hypotheses(unfolded.module, module, unfolded.cut_nodes,
                                report.node_map, input_map, options.fan_in_cap)) {
    throw std::logic_error(
        "pipeline invariant violated: synthesized outputs diverge from the cut set");
  }

  for (const auto& [label, node] : unfolded.wiring) {
    report.final_wiring[label] = report.node_map.at(node);
  }
  report.optimized = recursive_wiring(module, report.final_wiring);
  report.optimized.name = network.name + "_opt";
  report.nodes_after = static_cast<int>(report.optimized.node_count());
  report.reduction_exponent = report.nodes_before - report.nodes_after;

  if (report.nodes_before <= options.max_state_bits &&
      report.nodes_after <= options.max_state_bits) {
    report.attractors_before =
        attractors(network, options.max_state_bits, options.fan_in_cap);
    report.attractors_after =
        attractors(report.optimized, options.max_state_bits, options.fan_in_cap);
    report.verified =
        isomorphic_attractors(network, report.optimized, report.cut_set,
                              report.node_map, options.max_state_bits,
                              options.fan_in_cap);
  }
  return report;
}

bool verify(const NetworkDef& network, const PipelineReport& report,
            int max_state_bits) {
  return isomorphic_attractors(network, report.optimized, report.cut_set,
                               report.node_map, max_state_bits);
}

}  // namespace banopt
