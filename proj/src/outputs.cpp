#include "banopt/outputs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "banopt/errors.hpp"

namespace banopt {

namespace {

std::vector<std::vector<int>> in_neighbors(const InteractionDigraph& g) {
  std::vector<std::vector<int>> in(g.node_successors.size());
  for (std::size_t v = 0; v < g.node_successors.size(); ++v) {
    for (int w : g.node_successors[v]) {
      in[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
    }
  }
  return in;
}

class Expander {
 public:
  explicit Expander(const NetworkDef& module) : module_(module) {}

  // The local function of `node` as seen `delay` updates before the
  // observation instant, over delayed inputs only.
  const Expr& expand(int node, int delay) {
    const auto key = std::make_pair(node, delay);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    Expr result = transform(module_.locals[static_cast<std::size_t>(node)], delay);
    return memo_.emplace(key, std::move(result)).first->second;
  }

 private:
  Expr transform(const Expr& e, int delay) {
    switch (e.op()) {
      case Expr::Op::Const:
        return e;
      case Expr::Op::Var: {
        const VarRef& v = e.var_ref();
        if (v.kind == VarKind::Input) {
          return Expr::var(VarRef::delayed_input(v.label, delay + 1));
        }
        return expand(module_.node_index(v.label), delay + 1);
      }
      case Expr::Op::Not:
        return Expr::negation(transform(e.lhs(), delay));
      case Expr::Op::And:
        return Expr::conjunction(transform(e.lhs(), delay),
                                 transform(e.rhs(), delay));
      case Expr::Op::Or:
        return Expr::disjunction(transform(e.lhs(), delay),
                                 transform(e.rhs(), delay));
    }
    throw std::logic_error("unreachable");
  }

  const NetworkDef& module_;
  std::map<std::pair<int, int>, Expr> memo_;
};

void require_acyclic(const InteractionDigraph& g) {
  if (g.has_node_cycle()) {
    throw CyclicModuleError("output functions are defined for acyclic modules only");
  }
}

}  // namespace

OutputFunction make_output_function(const Expr& raw, int fan_in_cap) {
  OutputFunction out;
  out.table = canonicalize(raw, fan_in_cap);
  out.expr = sop_expr(out.table);
  out.delay = out.table.max_delay();
  return out;
}

std::vector<Requirement> requirements(const NetworkDef& module,
                                      const std::string& node, int fan_in_cap) {
  const int start = module.node_index(node);
  if (start < 0) throw std::invalid_argument("unknown node '" + node + "'");
  const InteractionDigraph g = interaction_digraph(module, fan_in_cap);
  require_acyclic(g);
  const auto in = in_neighbors(g);

  std::set<std::pair<int, int>> seen;  // (delay, node index)
  std::deque<std::pair<int, int>> queue{{0, start}};
  seen.insert({0, start});
  while (!queue.empty()) {
    const auto [delay, v] = queue.front();
    queue.pop_front();
    for (int w : in[static_cast<std::size_t>(v)]) {
      if (seen.insert({delay + 1, w}).second) queue.push_back({delay + 1, w});
    }
  }

  std::vector<Requirement> out;
  out.reserve(seen.size());
  for (const auto& [delay, v] : seen) {
    out.push_back({module.nodes[static_cast<std::size_t>(v)], delay});
  }
  return out;
}

OutputFunction output_circuit(const NetworkDef& module, const std::string& node,
                              int fan_in_cap) {
  const int index = module.node_index(node);
  if (index < 0) throw std::invalid_argument("unknown node '" + node + "'");
  require_acyclic(interaction_digraph(module, fan_in_cap));
  Expander expander(module);
  return make_output_function(expander.expand(index, 0), fan_in_cap);
}

std::vector<OutputFunction> all_output_circuits(const NetworkDef& module,
                                                int fan_in_cap) {
  require_acyclic(interaction_digraph(module, fan_in_cap));
  Expander expander(module);
  std::vector<OutputFunction> out;
  out.reserve(module.node_count());
  for (std::size_t i = 0; i < module.node_count(); ++i) {
    out.push_back(make_output_function(expander.expand(static_cast<int>(i), 0), fan_in_cap));
  }
  return out;
}

std::map<std::string, OutputFunction> output_functions(
    const NetworkDef& module, const std::vector<std::string>& nodes,
    int fan_in_cap) {
  for (const auto& id : nodes) {
    if (module.node_index(id) < 0) {
      throw std::invalid_argument("unknown node '" + id + "'");
    }
  }
  require_acyclic(interaction_digraph(module, fan_in_cap));
  Expander expander(module);
  std::map<std::string, OutputFunction> out;
  for (const auto& id : nodes) {
    out.emplace(id, make_output_function(expander.expand(module.node_index(id), 0), fan_in_cap));
  }
  return out;
}

}  // namespace banopt
