#pragma once

// Shared fixtures, independent oracles and random generators for the test
// suites. Oracles deliberately avoid the library's truth-table machinery:
// they work through eval() over explicit assignments so that table-based
// results are checked against a second route.

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "banopt/dynamics.hpp"
#include "banopt/expr.hpp"
#include "banopt/netfile.hpp"
#include "banopt/network.hpp"
#include "banopt/outputs.hpp"

namespace testutil {

using namespace banopt;

inline std::string fixture_path(const std::string& name) {
  return std::string(BANOPT_FIXTURE_DIR) + "/" + name;
}

inline Expr parse(const std::string& text, const std::set<std::string>& nodes,
                  const std::set<std::string>& inputs = {}) {
  return parse_expr(text, nodes, inputs);
}

inline NetworkDef make_network(const std::string& name,
                               const std::vector<std::string>& nodes,
                               const std::vector<std::string>& inputs,
                               const std::vector<std::string>& locals) {
  NetworkDef net;
  net.name = name;
  net.nodes = nodes;
  net.inputs = inputs;
  const std::set<std::string> node_set(nodes.begin(), nodes.end());
  const std::set<std::string> input_set(inputs.begin(), inputs.end());
  for (const auto& text : locals) {
    net.locals.push_back(parse_expr(text, node_set, input_set));
  }
  net.validate();
  return net;
}

inline NetworkDef f_a() {
  return make_network("F_A", {"a", "b", "c", "d"}, {},
                      {"d", "a", "a", "!b | !c"});
}

inline NetworkDef m_a() {
  return make_network("M_A", {"a", "b", "c", "d"}, {"alpha"},
                      {"alpha", "a", "a", "!b | !c"});
}

inline NetworkDef f_prime_a() {
  return make_network("F_A_opt", {"a", "b", "d"}, {}, {"d", "a", "!b"});
}

inline NetworkDef f_b() {
  return make_network(
      "F_B", {"St", "Sl", "Sk", "Pp", "Ru", "S9", "C", "C25", "M", "C*"}, {},
      {"!St", "!Sl | C*", "St | !Sk", "Sl | !Pp", "!Sk | Pp | !C | !C*",
       "!Sk | Pp | !C | !C*", "!Ru | !S9 | !Sl", "!Pp | C", "Pp | !C",
       "!Ru | !S9 | C25 | !M"});
}

inline NetworkDef m_b() {
  return make_network(
      "M_B", {"St", "Sl", "Sk", "Pp", "Ru", "S9", "C", "C25", "M", "C*"},
      {"alpha_St", "alpha_Sl", "alpha_Sk", "alpha_Pp", "alpha_C", "alpha_C*"},
      {"!alpha_St", "!alpha_Sl | alpha_C*", "alpha_St | !alpha_Sk",
       "alpha_Sl | !alpha_Pp", "!alpha_Sk | alpha_Pp | !alpha_C | !alpha_C*",
       "!alpha_Sk | alpha_Pp | !alpha_C | !alpha_C*", "!Ru | !S9 | !alpha_Sl",
       "!alpha_Pp | alpha_C", "alpha_Pp | !alpha_C", "!Ru | !S9 | C25 | !M"});
}

// The eight-node module of the worked synthesis, and its rewiring.
inline NetworkDef m_prime_b() {
  return make_network(
      "M_B_opt", {"St", "Sl", "Sk", "Pp", "Ru", "C", "C25", "C*"},
      {"alpha_St", "alpha_Sl", "alpha_Sk", "alpha_Pp", "alpha_C", "alpha_C*"},
      {"!alpha_St", "!alpha_Sl | alpha_C*", "alpha_St | !alpha_Sk",
       "alpha_Sl | !alpha_Pp", "!alpha_Sk | alpha_Pp | !alpha_C | !alpha_C*",
       "!Ru | !alpha_Sl", "!alpha_Pp | alpha_C", "C25"});
}

inline NetworkDef f_prime_b() {
  return make_network("F_B_opt", {"St", "Sl", "Sk", "Pp", "Ru", "C", "C25", "C*"},
                      {},
                      {"!St", "!Sl | C*", "St | !Sk", "Sl | !Pp",
                       "!Sk | Pp | !C | !C*", "!Ru | !Sl", "!Pp | C", "C25"});
}

// ---- independent oracles ----

// Exhaustive equivalence through eval() over every assignment of the union
// of syntactic variables.
inline bool oracle_equivalent(const Expr& a, const Expr& b) {
  std::set<VarRef> vars = syntactic_vars(a);
  for (const VarRef& v : syntactic_vars(b)) vars.insert(v);
  const std::vector<VarRef> order(vars.begin(), vars.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << order.size()); ++mask) {
    std::map<VarRef, bool> assignment;
    for (std::size_t i = 0; i < order.size(); ++i) {
      assignment[order[i]] = (mask >> i) & 1;
    }
    if (eval(a, assignment) != eval(b, assignment)) return false;
  }
  return true;
}

// Essential variables straight from the definition.
inline std::set<VarRef> oracle_essential_vars(const Expr& e) {
  const std::set<VarRef> vars = syntactic_vars(e);
  const std::vector<VarRef> order(vars.begin(), vars.end());
  std::set<VarRef> essential;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << order.size()); ++mask) {
      if ((mask >> i) & 1) continue;
      std::map<VarRef, bool> low, high;
      for (std::size_t v = 0; v < order.size(); ++v) {
        const bool bit = (mask >> v) & 1;
        low[order[v]] = bit;
        high[order[v]] = v == i ? true : bit;
      }
      if (eval(e, low) != eval(e, high)) {
        essential.insert(order[i]);
        break;
      }
    }
  }
  return essential;
}

// One parallel update through eval() with an explicit assignment map.
inline Config oracle_step(const NetworkDef& net, Config x) {
  std::map<VarRef, bool> assignment;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    assignment[VarRef::node(net.nodes[i])] = (x >> i) & 1;
  }
  Config next = 0;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (eval(net.locals[i], assignment)) next |= Config{1} << i;
  }
  return next;
}

// Cycle states found by power iteration from every configuration.
inline std::set<std::vector<Config>> oracle_attractors(const NetworkDef& net) {
  const std::uint64_t count = std::uint64_t{1} << net.node_count();
  std::set<std::vector<Config>> cycles;
  for (Config start = 0; start < count; ++start) {
    Config x = start;
    for (std::uint64_t i = 0; i < count; ++i) x = oracle_step(net, x);
    std::vector<Config> cycle{x};
    for (Config y = oracle_step(net, x); y != x; y = oracle_step(net, y)) {
      cycle.push_back(y);
    }
    const auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    cycles.insert(std::move(cycle));
  }
  return cycles;
}

// Minimum feedback vertex set size by ascending-size subset search.
inline std::size_t oracle_fvs_size(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  auto acyclic = [&](std::uint32_t removed) {
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if ((removed >> v) & 1) continue;
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!((removed >> w) & 1)) ++indegree[static_cast<std::size_t>(w)];
      }
    }
    std::vector<int> queue;
    int alive = 0;
    for (int v = 0; v < n; ++v) {
      if ((removed >> v) & 1) continue;
      ++alive;
      if (indegree[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    }
    int seen = 0;
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      ++seen;
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if ((removed >> w) & 1) continue;
        if (--indegree[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
      }
    }
    return seen == alive;
  };
  for (int size = 0; size <= n; ++size) {
    // All subsets of the given popcount.
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
      if (std::popcount(subset) != size) continue;
      if (acyclic(subset)) return static_cast<std::size_t>(size);
    }
  }
  return static_cast<std::size_t>(n);
}

// Steps after which a node's value no longer depends on the initial
// configuration: 1 + the longest chain of node influences into it.
inline std::vector<int> stabilization_horizons(const NetworkDef& module) {
  const InteractionDigraph g = interaction_digraph(module);
  std::vector<std::vector<int>> in(module.node_count());
  for (std::size_t v = 0; v < g.node_successors.size(); ++v) {
    for (int w : g.node_successors[v]) {
      in[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
    }
  }
  std::vector<int> horizon(module.node_count(), 0);
  std::function<int(int)> visit = [&](int v) {
    if (horizon[static_cast<std::size_t>(v)] > 0) {
      return horizon[static_cast<std::size_t>(v)];
    }
    int h = 1;
    for (int w : in[static_cast<std::size_t>(v)]) h = std::max(h, 1 + visit(w));
    horizon[static_cast<std::size_t>(v)] = h;
    return h;
  };
  for (std::size_t v = 0; v < module.node_count(); ++v) visit(static_cast<int>(v));
  return horizon;
}

// Evaluates an output function against the window of an input sequence:
// a variable of delay d reads the value d updates before the end.
inline bool backward_eval(const Expr& output, const InputSequence& sequence) {
  std::map<VarRef, bool> assignment;
  for (const VarRef& v : syntactic_vars(output)) {
    std::size_t input = 0;
    while (sequence.labels[input] != v.label) ++input;
    assignment[v] = sequence.value(input, sequence.steps - v.delay + 1);
  }
  return eval(output, assignment);
}

// ---- random generators (deterministic seeds in the suites) ----

// An all–essential-variable local function over the given variables.
inline Expr random_local(std::mt19937_64& rng, std::vector<VarRef> vars) {
  std::sort(vars.begin(), vars.end());
  const std::size_t rows = std::size_t{1} << vars.size();
  for (;;) {
    std::vector<bool> bits(rows);
    for (auto&& bit : bits) bit = rng() & 1;
    const TruthTable table(vars, bits);
    const Expr candidate = sop_expr(table);
    if (syntactic_vars(candidate) == std::set<VarRef>(vars.begin(), vars.end()) &&
        oracle_essential_vars(candidate).size() == vars.size()) {
      return candidate;
    }
  }
}

// Closed promise-passing network with fan-in 1..max_fanin per node.
inline NetworkDef random_ban(std::mt19937_64& rng, int n, int max_fanin) {
  NetworkDef net;
  net.name = "random";
  for (int i = 0; i < n; ++i) net.nodes.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    const int fanin = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_fanin));
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<VarRef> vars;
    for (int v = 0; v < std::min(fanin, n); ++v) {
      vars.push_back(VarRef::node(net.nodes[static_cast<std::size_t>(pool[v])]));
    }
    net.locals.push_back(random_local(rng, std::move(vars)));
  }
  net.validate();
  return net;
}

// Acyclic module built by levels: a node may read inputs and strictly
// lower-level nodes, so chains stay within `depth`.
inline NetworkDef random_acyclic_module(std::mt19937_64& rng, int n, int num_inputs,
                                        int depth, int max_fanin) {
  NetworkDef net;
  net.name = "random_module";
  for (int i = 0; i < num_inputs; ++i) net.inputs.push_back("in" + std::to_string(i));
  std::vector<int> level(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    net.nodes.push_back("v" + std::to_string(i));
    level[static_cast<std::size_t>(i)] =
        1 + static_cast<int>(rng() % static_cast<unsigned>(depth));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<VarRef> pool;
    for (const auto& label : net.inputs) pool.push_back(VarRef::input(label));
    for (int j = 0; j < n; ++j) {
      if (level[static_cast<std::size_t>(j)] < level[static_cast<std::size_t>(i)]) {
        pool.push_back(VarRef::node(net.nodes[static_cast<std::size_t>(j)]));
      }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    const int fanin = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_fanin));
    pool.resize(static_cast<std::size_t>(
        std::min<std::size_t>(pool.size(), static_cast<std::size_t>(fanin))));
    net.locals.push_back(random_local(rng, pool));
  }
  net.validate();
  return net;
}

// Successor lists with the given arc probability (self-loops allowed).
inline std::vector<std::vector<int>> random_digraph(std::mt19937_64& rng, int n,
                                                    double arc_probability) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      const double roll =
          static_cast<double>(rng() % 1000000) / 1000000.0;
      if (roll < arc_probability) adj[static_cast<std::size_t>(v)].push_back(w);
    }
  }
  return adj;
}

}  // namespace testutil
