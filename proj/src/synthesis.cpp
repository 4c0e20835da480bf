#include "banopt/synthesis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "banopt/errors.hpp"

namespace banopt {

namespace {

// One rewrite pass over a module, with enough bookkeeping to keep the
// realization map and log in sync.
struct Engine {
  NetworkDef net;
  std::map<std::string, std::string> realization;
  std::vector<std::string> log;
  RewriteObserver observer;
  int fan_in_cap;

  std::set<std::string> protected_set() const {
    std::set<std::string> out;
    for (const auto& [name, node] : realization) out.insert(node);
    return out;
  }

  void fired(const std::string& event) {
    log.push_back(event);
    if (observer) observer(net, event);
  }

  std::vector<TruthTable> output_tables() const {
    std::vector<TruthTable> tables;
    tables.reserve(net.node_count());
    for (OutputFunction& of : all_output_circuits(net, fan_in_cap)) {
      tables.push_back(std::move(of.table));
    }
    return tables;
  }

  void drop_node(std::size_t index) {
    net.nodes.erase(net.nodes.begin() + static_cast<long>(index));
    net.locals.erase(net.locals.begin() + static_cast<long>(index));
  }

  // Merged module with every reference to `removed` redirected to
  // `survivor`, re-normalized where the substitution left a variable
  // inessential.
  NetworkDef merged(std::size_t removed, std::size_t survivor) const {
    const std::map<VarRef, Expr> redirect{
        {VarRef::node(net.nodes[removed]),
         Expr::var(VarRef::node(net.nodes[survivor]))}};
    NetworkDef out = net;
    out.nodes.erase(out.nodes.begin() + static_cast<long>(removed));
    out.locals.erase(out.locals.begin() + static_cast<long>(removed));
    for (std::size_t k = 0; k < out.node_count(); ++k) {
      const Expr replaced = substitute(out.locals[k], redirect);
      if (!(replaced == out.locals[k])) {
        out.locals[k] = replaced;
        if (essential_vars(replaced, fan_in_cap) != syntactic_vars(replaced)) {
          out.locals[k] = simplify(replaced, fan_in_cap);
        }
      }
    }
    return out;
  }

  bool merge_once() {
    const auto tables = output_tables();
    const auto protected_nodes = protected_set();
    for (std::size_t i = 0; i < net.node_count(); ++i) {
      for (std::size_t j = i + 1; j < net.node_count(); ++j) {
        if (tables[i] != tables[j]) continue;
        const bool i_protected = protected_nodes.count(net.nodes[i]) > 0;
        const bool j_protected = protected_nodes.count(net.nodes[j]) > 0;
        const std::size_t preferred = (!i_protected && j_protected) ? j : i;
        // Redirecting the removed node's readers can close a cycle when the
        // survivor depends on them (the pair's equality hides a collapsed
        // chain); fall back to the other direction, or keep the pair.
        for (const std::size_t survivor : {preferred, preferred == i ? j : i}) {
          const std::size_t removed = survivor == i ? j : i;
          NetworkDef candidate = merged(removed, survivor);
          if (interaction_digraph(candidate, fan_in_cap).has_node_cycle()) continue;
          const std::string removed_name = net.nodes[removed];
          const std::string survivor_name = net.nodes[survivor];
          net = std::move(candidate);
          for (auto& [name, node] : realization) {
            if (node == removed_name) node = survivor_name;
          }
          fired("merge " + removed_name + " -> " + survivor_name);
          return true;
        }
      }
    }
    return false;
  }

  bool shift_once() {
    const auto tables = output_tables();
    const InteractionDigraph digraph = interaction_digraph(net, fan_in_cap);
    // reaches[u] = nodes reachable from u along influence arcs.
    const std::size_t n = net.node_count();
    std::vector<std::set<int>> reaches(n);
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<int> stack{static_cast<int>(u)};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : digraph.node_successors[static_cast<std::size_t>(v)]) {
          if (reaches[u].insert(w).second) stack.push_back(w);
        }
      }
    }
    auto matches = [&](std::size_t u, std::size_t v) {
      return u != v && tables[v].shifted(1) == tables[u];
    };
    for (std::size_t u = 0; u < n; ++u) {
      // A constant local is already as small as a wire; rewiring it would
      // add an arc for nothing.
      if (net.locals[u].op() == Expr::Op::Const) continue;
      // Once u is a plain wire onto a valid source, leave it alone; the
      // rewrite must be idempotent even when several sources qualify.
      if (net.locals[u].op() == Expr::Op::Var &&
          net.locals[u].var_ref().kind == VarKind::Node) {
        const int w = net.node_index(net.locals[u].var_ref().label);
        if (w >= 0 && matches(u, static_cast<std::size_t>(w))) continue;
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (!matches(u, v)) continue;
        if (reaches[u].count(static_cast<int>(v))) continue;  // would close a cycle
        net.locals[u] = Expr::var(VarRef::node(net.nodes[v]));
        fired("delay-shift " + net.nodes[u] + " := " + net.nodes[v]);
        return true;
      }
    }
    return false;
  }

  bool simplify_once() {
    for (std::size_t i = 0; i < net.node_count(); ++i) {
      Expr simplified = simplify(net.locals[i], fan_in_cap);
      if (simplified.size() < net.locals[i].size()) {
        net.locals[i] = std::move(simplified);
        fired("simplify " + net.nodes[i]);
        return true;
      }
    }
    return false;
  }

  bool eliminate_once() {
    const InteractionDigraph digraph = interaction_digraph(net, fan_in_cap);
    const std::size_t n = net.node_count();
    std::vector<std::vector<int>> in(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (int w : digraph.node_successors[v]) {
        in[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
      }
    }
    std::vector<char> alive(n, 0);
    std::vector<int> stack;
    for (const std::string& node : protected_set()) {
      const int i = net.node_index(node);
      if (i >= 0 && !alive[static_cast<std::size_t>(i)]) {
        alive[static_cast<std::size_t>(i)] = 1;
        stack.push_back(i);
      }
    }
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : in[static_cast<std::size_t>(v)]) {
        if (!alive[static_cast<std::size_t>(w)]) {
          alive[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    std::vector<std::string> dead;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) dead.push_back(net.nodes[i]);
    }
    if (dead.empty()) return false;

    // Dangling references to dead nodes can only be inessential ones;
    // pinning them to a constant preserves every local's semantics.
    std::map<VarRef, Expr> pin;
    for (const auto& name : dead) {
      pin.emplace(VarRef::node(name), Expr::constant(false));
    }
    for (std::size_t i = n; i-- > 0;) {
      if (!alive[i]) drop_node(i);
    }
    for (std::size_t i = 0; i < net.node_count(); ++i) {
      const Expr replaced = substitute(net.locals[i], pin);
      if (!(replaced == net.locals[i])) {
        net.locals[i] = simplify(replaced, fan_in_cap);
      }
    }
    std::string event = "drop";
    for (const auto& name : dead) event += " " + name;
    fired(event);
    return true;
  }

  void run_to_fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      while (merge_once()) changed = true;
      while (shift_once()) changed = true;
      while (simplify_once()) changed = true;
      if (eliminate_once()) changed = true;
    }
  }
};

Engine make_engine(const NetworkDef& module,
                   const std::vector<std::string>& protected_nodes, int fan_in_cap,
                   RewriteObserver observer = {}) {
  Engine engine{module, {}, {}, std::move(observer), fan_in_cap};
  for (const auto& node : protected_nodes) {
    if (module.node_index(node) < 0) {
      throw std::invalid_argument("protected node '" + node + "' is not in the module");
    }
    engine.realization.emplace(node, node);
  }
  return engine;
}

}  // namespace

NetworkDef merge_equivalent_nodes(const NetworkDef& module,
                                  const std::vector<std::string>& protected_nodes,
                                  int fan_in_cap) {
  Engine engine = make_engine(module, protected_nodes, fan_in_cap);
  while (engine.merge_once()) {
  }
  return engine.net;
}

NetworkDef delay_shift_rewrite(const NetworkDef& module,
                               const std::vector<std::string>& protected_nodes,
                               int fan_in_cap) {
  Engine engine = make_engine(module, protected_nodes, fan_in_cap);
  while (engine.shift_once()) {
  }
  return engine.net;
}

NetworkDef simplify_locals(const NetworkDef& module, int fan_in_cap) {
  Engine engine = make_engine(module, {}, fan_in_cap);
  while (engine.simplify_once()) {
  }
  return engine.net;
}

NetworkDef eliminate_dead(const NetworkDef& module,
                          const std::vector<std::string>& protected_nodes,
                          int fan_in_cap) {
  Engine engine = make_engine(module, protected_nodes, fan_in_cap);
  engine.eliminate_once();
  return engine.net;
}

SynthesisResult synthesize(const SynthesisInstance& instance, const NetworkDef& seed,
                           const std::vector<std::string>& realizing_nodes,
                           int fan_in_cap, const RewriteObserver& observer) {
  std::set<std::string> names;
  for (const auto& [name, target] : instance.targets) names.insert(name);
  if (names != std::set<std::string>(realizing_nodes.begin(), realizing_nodes.end())) {
    throw std::invalid_argument(
        "target names must match the realizing nodes of the seed");
  }

  Engine engine = make_engine(seed, realizing_nodes, fan_in_cap, observer);
  engine.run_to_fixpoint();

  SynthesisResult result;
  result.module = std::move(engine.net);
  result.realization = std::move(engine.realization);
  result.rewrite_log = std::move(engine.log);
  result.within_budget =
      !instance.node_budget ||
      static_cast<int>(result.module.node_count()) <= *instance.node_budget;
  if (!verify_synthesis(result, instance, fan_in_cap)) {
    throw std::logic_error("synthesis rewrites failed to preserve a target output");
  }
  return result;
}

bool verify_synthesis(const SynthesisResult& result, const SynthesisInstance& instance,
                      int fan_in_cap) {
  for (const auto& [name, target] : instance.targets) {
    const auto it = result.realization.find(name);
    if (it == result.realization.end()) return false;
    if (result.module.node_index(it->second) < 0) return false;
    const OutputFunction realized =
        output_circuit(result.module, it->second, fan_in_cap);
    if (realized.delay != target.delay) return false;
    if (!(realized.table == target.table)) return false;
  }
  return true;
}

namespace {

bool bits_depend_on(const std::vector<bool>& bits, int var_count, int index) {
  const std::size_t stride = std::size_t{1} << index;
  const std::size_t rows = std::size_t{1} << var_count;
  for (std::size_t r = 0; r < rows; ++r) {
    if ((r & stride) == 0 && bits[r] != bits[r | stride]) return true;
  }
  return false;
}

// Every local function over some variable subset (all variables essential),
// emitted deterministically: subsets in ascending mask order, function
// tables in ascending value order.
std::vector<Expr> candidate_locals(const std::vector<VarRef>& available,
                                   int max_fanin) {
  std::vector<Expr> out{Expr::constant(false), Expr::constant(true)};
  const int m = static_cast<int>(available.size());
  for (std::uint32_t subset = 1; subset < (1u << m); ++subset) {
    const int k = __builtin_popcount(subset);
    if (k > max_fanin) continue;
    std::vector<VarRef> vars;
    for (int i = 0; i < m; ++i) {
      if ((subset >> i) & 1) vars.push_back(available[static_cast<std::size_t>(i)]);
    }
    std::sort(vars.begin(), vars.end());
    const std::size_t rows = std::size_t{1} << k;
    for (std::uint64_t fn = 0; fn < (std::uint64_t{1} << rows); ++fn) {
      std::vector<bool> bits(rows);
      for (std::size_t r = 0; r < rows; ++r) bits[r] = (fn >> r) & 1;
      bool essential = true;
      for (int i = 0; i < k && essential; ++i) {
        essential = bits_depend_on(bits, k, i);
      }
      if (!essential) continue;
      out.push_back(sop_expr(TruthTable(vars, bits)));
    }
  }
  return out;
}

}  // namespace

std::optional<NetworkDef> exact_synthesize(const SynthesisInstance& instance,
                                           const ExactBounds& bounds,
                                           int fan_in_cap) {
  if (bounds.max_nodes > 4 || bounds.max_fanin > 4 ||
      instance.input_labels.size() > 3) {
    throw std::invalid_argument("exact synthesis bounds exceeded");
  }
  std::vector<TruthTable> target_tables;
  for (const auto& [name, target] : instance.targets) {
    if (target.delay > 3) {
      throw std::invalid_argument("exact synthesis bounds exceeded");
    }
    target_tables.push_back(target.table);
  }

  std::optional<NetworkDef> best;
  std::size_t best_arcs = 0;

  for (int node_count = 0; node_count <= bounds.max_nodes; ++node_count) {
    std::vector<std::string> names;
    for (int i = 0; i < node_count; ++i) {
      std::string name = "v" + std::to_string(i + 1);
      while (std::find(instance.input_labels.begin(), instance.input_labels.end(),
                       name) != instance.input_labels.end()) {
        name += "_";
      }
      names.push_back(name);
    }

    // Node i may read inputs and earlier nodes; every DAG has such a layering.
    std::vector<std::vector<Expr>> candidates;
    for (int i = 0; i < node_count; ++i) {
      std::vector<VarRef> available;
      for (const auto& label : instance.input_labels) {
        available.push_back(VarRef::input(label));
      }
      for (int j = 0; j < i; ++j) {
        available.push_back(VarRef::node(names[static_cast<std::size_t>(j)]));
      }
      candidates.push_back(candidate_locals(available, bounds.max_fanin));
    }
    double combinations = 1.0;
    for (const auto& c : candidates) combinations *= static_cast<double>(c.size());
    if (combinations > 2e7) {
      throw std::invalid_argument("exact synthesis bounds exceeded");
    }

    std::vector<Expr> locals(static_cast<std::size_t>(node_count));
    auto consider = [&](const NetworkDef& module) {
      const auto circuits = all_output_circuits(module, fan_in_cap);
      std::vector<TruthTable> tables;
      tables.reserve(circuits.size());
      for (const auto& of : circuits) tables.push_back(of.table);
      for (const auto& target : target_tables) {
        if (std::find(tables.begin(), tables.end(), target) == tables.end()) {
          return;
        }
      }
      std::size_t arcs = 0;
      for (const auto& local : module.locals) arcs += syntactic_vars(local).size();
      if (!best || module.node_count() < best->node_count() ||
          (module.node_count() == best->node_count() && arcs < best_arcs)) {
        best = module;
        best_arcs = arcs;
      }
    };

    std::function<void(int)> assign = [&](int i) {
      if (i == node_count) {
        NetworkDef module;
        module.name = "synth";
        module.nodes = names;
        module.inputs = instance.input_labels;
        module.locals = locals;
        consider(module);
        return;
      }
      for (const Expr& candidate : candidates[static_cast<std::size_t>(i)]) {
        locals[static_cast<std::size_t>(i)] = candidate;
        assign(i + 1);
      }
    };
    assign(0);

    if (best) break;  // smaller node counts were already exhausted
  }
  return best;
}

}  // namespace banopt
