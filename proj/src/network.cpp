#include "banopt/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "banopt/errors.hpp"

namespace banopt {

int NetworkDef::node_index(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == id) return static_cast<int>(i);
  }
  return -1;
}

int NetworkDef::input_index(const std::string& label) const {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i] == label) return static_cast<int>(i);
  }
  return -1;
}

const Expr& NetworkDef::local(const std::string& id) const {
  const int i = node_index(id);
  if (i < 0) throw std::invalid_argument("unknown node '" + id + "'");
  return locals[static_cast<std::size_t>(i)];
}

void NetworkDef::validate() const {
  if (locals.size() != nodes.size()) {
    throw std::invalid_argument("every node needs exactly one local function");
  }
  std::set<std::string> seen;
  for (const auto& n : nodes) {
    if (n.empty()) throw std::invalid_argument("empty node id");
    if (!seen.insert(n).second) {
      throw std::invalid_argument("duplicate node '" + n + "'");
    }
  }
  for (const auto& l : inputs) {
    if (l.empty()) throw std::invalid_argument("empty input label");
    if (!seen.insert(l).second) {
      throw std::invalid_argument("input '" + l + "' collides with another declaration");
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const VarRef& v : syntactic_vars(locals[i])) {
      switch (v.kind) {
        case VarKind::Node:
          if (node_index(v.label) < 0) {
            throw std::invalid_argument("local function of '" + nodes[i] +
                                        "' references undeclared node '" + v.label +
                                        "'");
          }
          break;
        case VarKind::Input:
          if (input_index(v.label) < 0) {
            throw std::invalid_argument("local function of '" + nodes[i] +
                                        "' references undeclared input '" + v.label +
                                        "'");
          }
          break;
        case VarKind::DelayedInput:
          throw std::invalid_argument("local function of '" + nodes[i] +
                                      "' may not use delayed variables");
      }
    }
  }
}

std::string to_string(ArcSign sign) {
  switch (sign) {
    case ArcSign::Positive: return "+";
    case ArcSign::Negative: return "-";
    case ArcSign::Dual: return "±";
  }
  return "?";
}

namespace {

// Monotonicity of the table in variable `index`; the variable must be
// essential, so at least one pair differs.
ArcSign sign_of(const TruthTable& table, int index) {
  bool nondecreasing = true;
  bool nonincreasing = true;
  const std::uint64_t bit = std::uint64_t{1} << index;
  for (std::uint64_t r = 0; r < table.row_count(); ++r) {
    if (r & bit) continue;
    const bool low = table.bit(r);
    const bool high = table.bit(r | bit);
    if (low && !high) nondecreasing = false;
    if (!low && high) nonincreasing = false;
  }
  if (nondecreasing) return ArcSign::Positive;
  if (nonincreasing) return ArcSign::Negative;
  return ArcSign::Dual;
}

bool dfs_cycle(const std::vector<std::vector<int>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> color(n, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    stack.push_back({static_cast<int>(start), 0});
    color[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj[static_cast<std::size_t>(v)].size()) {
        const int w = adj[static_cast<std::size_t>(v)][next++];
        if (color[static_cast<std::size_t>(w)] == 1) return true;
        if (color[static_cast<std::size_t>(w)] == 0) {
          color[static_cast<std::size_t>(w)] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

bool InteractionDigraph::has_node_cycle() const { return dfs_cycle(node_successors); }

int InteractionDigraph::depth() const {
  if (has_node_cycle()) {
    throw CyclicModuleError("depth is defined for acyclic modules only");
  }
  const std::size_t n = node_successors.size();
  // Longest path via DFS with memoized downstream depth.
  std::vector<int> down(n, -1);
  std::vector<std::pair<int, std::size_t>> stack;
  int best = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (down[start] >= 0) continue;
    stack.push_back({static_cast<int>(start), 0});
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& succ = node_successors[static_cast<std::size_t>(v)];
      if (next < succ.size()) {
        const int w = succ[next++];
        if (down[static_cast<std::size_t>(w)] < 0) stack.push_back({w, 0});
      } else {
        int d = 0;
        for (int w : succ) d = std::max(d, 1 + down[static_cast<std::size_t>(w)]);
        down[static_cast<std::size_t>(v)] = d;
        best = std::max(best, d);
        stack.pop_back();
      }
    }
  }
  return best;
}

InteractionDigraph interaction_digraph(const NetworkDef& net, int fan_in_cap) {
  InteractionDigraph g;
  g.node_ids = net.nodes;
  g.input_labels = net.inputs;
  g.node_successors.assign(net.nodes.size(), {});

  for (std::size_t t = 0; t < net.nodes.size(); ++t) {
    const TruthTable table = canonicalize(net.locals[t], fan_in_cap);
    for (std::size_t i = 0; i < table.var_count(); ++i) {
      const VarRef& source = table.vars()[i];
      const ArcSign sign = sign_of(table, static_cast<int>(i));
      g.arcs.push_back({source, net.nodes[t], sign});
      if (source.kind == VarKind::Node) {
        g.node_successors[static_cast<std::size_t>(net.node_index(source.label))]
            .push_back(static_cast<int>(t));
      }
    }
  }
  for (auto& succ : g.node_successors) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  std::sort(g.arcs.begin(), g.arcs.end(), [&](const auto& a, const auto& b) {
    if (a.source != b.source) return a.source < b.source;
    return net.node_index(a.target) < net.node_index(b.target);
  });
  return g;
}

std::vector<PromiseViolation> validate_promise(const NetworkDef& net,
                                               int fan_in_cap) {
  std::vector<PromiseViolation> out;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    std::set<VarRef> syntactic = syntactic_vars(net.locals[i]);
    std::set<VarRef> essential;
    try {
      essential = essential_vars(net.locals[i], fan_in_cap);
    } catch (const FanInCapError& e) {
      throw FanInCapError("node '" + net.nodes[i] + "': " + e.what());
    }
    for (const VarRef& v : syntactic) {
      if (!essential.count(v)) out.push_back({net.nodes[i], v});
    }
  }
  return out;
}

bool is_acyclic(const NetworkDef& net, int fan_in_cap) {
  return !interaction_digraph(net, fan_in_cap).has_node_cycle();
}

NetworkDef recursive_wiring(const NetworkDef& net, const Wiring& wiring) {
  std::map<VarRef, Expr> substitution;
  for (const auto& [label, node] : wiring) {
    if (net.input_index(label) < 0) {
      throw std::invalid_argument("wiring references undeclared input '" + label + "'");
    }
    if (net.node_index(node) < 0) {
      throw std::invalid_argument("wiring targets undeclared node '" + node + "'");
    }
    substitution.emplace(VarRef::input(label), Expr::var(VarRef::node(node)));
  }
  NetworkDef out = net;
  out.inputs.clear();
  for (const auto& label : net.inputs) {
    if (!wiring.count(label)) out.inputs.push_back(label);
  }
  for (auto& local : out.locals) local = substitute(local, substitution);
  return out;
}

bool semantically_equal(const NetworkDef& a, const NetworkDef& b, int fan_in_cap) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a.nodes) != sorted(b.nodes) || sorted(a.inputs) != sorted(b.inputs)) {
    throw std::invalid_argument("semantic comparison requires equal node and input sets");
  }
  for (const auto& id : a.nodes) {
    if (!equivalent(a.local(id), b.local(id), fan_in_cap)) return false;
  }
  return true;
}

}  // namespace banopt
