#include "banopt/unfold.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>

#include "banopt/errors.hpp"

namespace banopt {

namespace {

std::vector<std::vector<int>> dedup(const std::vector<std::vector<int>>& successors) {
  std::vector<std::vector<int>> out(successors.size());
  for (std::size_t v = 0; v < successors.size(); ++v) {
    out[v] = successors[v];
    std::sort(out[v].begin(), out[v].end());
    out[v].erase(std::unique(out[v].begin(), out[v].end()), out[v].end());
  }
  return out;
}

bool acyclic_without(const std::vector<std::vector<int>>& adj,
                     const std::vector<char>& removed) {
  const std::size_t n = adj.size();
  std::vector<int> indegree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (removed[v]) continue;
    for (int w : adj[v]) {
      if (!removed[static_cast<std::size_t>(w)]) ++indegree[static_cast<std::size_t>(w)];
    }
  }
  std::deque<int> queue;
  std::size_t seen = 0;
  std::size_t alive = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (removed[v]) continue;
    ++alive;
    if (indegree[v] == 0) queue.push_back(static_cast<int>(v));
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    ++seen;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (removed[static_cast<std::size_t>(w)]) continue;
      if (--indegree[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
  }
  return seen == alive;
}

// Shortest directed cycle avoiding removed vertices, as a vertex list in
// cycle order; empty when the remaining graph is acyclic. Scanning start
// vertices in ascending order makes the choice deterministic.
std::vector<int> shortest_cycle(const std::vector<std::vector<int>>& adj,
                                std::uint64_t removed) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> best;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if ((removed >> s) & 1) continue;
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{s};
    dist[static_cast<std::size_t>(s)] = 0;
    int found = -1;
    while (!queue.empty() && found < 0) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if ((removed >> w) & 1) continue;
        if (w == s) {
          found = v;
          break;
        }
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          parent[static_cast<std::size_t>(w)] = v;
          queue.push_back(w);
        }
      }
    }
    if (found < 0) continue;
    std::vector<int> cycle;
    for (int v = found; v != s; v = parent[static_cast<std::size_t>(v)]) {
      cycle.push_back(v);
    }
    cycle.push_back(s);
    std::reverse(cycle.begin(), cycle.end());
    if (best.empty() || cycle.size() < best.size()) best = std::move(cycle);
  }
  return best;
}

// True when `a` should replace `b` as the reported set: smaller, or equal
// size and lexicographically larger as an ascending index sequence.
bool better_candidate(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a > b;
}

struct BranchState {
  const std::vector<std::vector<int>>* adj;
  std::vector<int> forced;
  std::vector<int> best;
  bool have_best = false;
};

void branch(BranchState& state, std::uint64_t removed, std::uint64_t forbidden,
            std::vector<int>& chosen) {
  const std::vector<int> cycle = shortest_cycle(*state.adj, removed);
  if (cycle.empty()) {
    std::vector<int> candidate = state.forced;
    candidate.insert(candidate.end(), chosen.begin(), chosen.end());
    std::sort(candidate.begin(), candidate.end());
    if (!state.have_best || better_candidate(candidate, state.best)) {
      state.best = std::move(candidate);
      state.have_best = true;
    }
    return;
  }
  if (state.have_best &&
      state.forced.size() + chosen.size() + 1 > state.best.size()) {
    return;
  }
  std::uint64_t local_forbidden = forbidden;
  for (int v : cycle) {
    if ((local_forbidden >> v) & 1) continue;
    chosen.push_back(v);
    branch(state, removed | (std::uint64_t{1} << v), local_forbidden, chosen);
    chosen.pop_back();
    local_forbidden |= std::uint64_t{1} << v;
  }
}

std::vector<int> heuristic_fvs(const std::vector<std::vector<int>>& adj,
                               const std::vector<int>& forced) {
  const std::size_t n = adj.size();
  std::vector<char> removed(n, 0);
  for (int v : forced) removed[static_cast<std::size_t>(v)] = 1;

  std::vector<int> degree(n, 0);
  auto recount = [&] {
    std::fill(degree.begin(), degree.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (removed[v]) continue;
      for (int w : adj[v]) {
        if (removed[static_cast<std::size_t>(w)]) continue;
        ++degree[v];
        ++degree[static_cast<std::size_t>(w)];
      }
    }
  };

  std::vector<int> chosen;
  while (!acyclic_without(adj, removed)) {
    recount();
    int pick = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (removed[v]) continue;
      if (pick < 0 || degree[v] > degree[static_cast<std::size_t>(pick)]) {
        pick = static_cast<int>(v);
      }
    }
    removed[static_cast<std::size_t>(pick)] = 1;
    chosen.push_back(pick);
  }
  // Drop anything the greedy over-selected.
  for (std::size_t i = 0; i < chosen.size();) {
    removed[static_cast<std::size_t>(chosen[i])] = 0;
    if (acyclic_without(adj, removed)) {
      chosen.erase(chosen.begin() + static_cast<long>(i));
    } else {
      removed[static_cast<std::size_t>(chosen[i])] = 1;
      ++i;
    }
  }
  std::vector<int> out = forced;
  out.insert(out.end(), chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FvsResult minimum_fvs(const std::vector<std::vector<int>>& successors,
                      const FvsOptions& options) {
  const auto adj = dedup(successors);
  const std::size_t n = adj.size();

  std::vector<int> forced;
  for (std::size_t v = 0; v < n; ++v) {
    if (std::binary_search(adj[v].begin(), adj[v].end(), static_cast<int>(v))) {
      forced.push_back(static_cast<int>(v));
    }
  }

  // The branch-and-bound tracks vertex sets in 64-bit masks.
  const int exact_cap = std::min(options.exact_cap, 64);
  if (static_cast<int>(n) > exact_cap) {
    return {heuristic_fvs(adj, forced), false};
  }

  BranchState state;
  state.adj = &adj;
  state.forced = forced;
  std::uint64_t removed = 0;
  for (int v : forced) removed |= std::uint64_t{1} << v;
  std::vector<int> chosen;
  branch(state, removed, 0, chosen);
  return {state.best, true};
}

UnfoldResult unfold(const NetworkDef& ban, int fan_in_cap) {
  if (!ban.is_closed()) {
    throw OpenInputsError("unfolding expects a closed network");
  }
  const InteractionDigraph digraph = interaction_digraph(ban, fan_in_cap);
  const FvsResult fvs = minimum_fvs(digraph.node_successors);

  UnfoldResult result;
  result.fvs_exact = fvs.exact;
  std::set<std::string> taken(ban.nodes.begin(), ban.nodes.end());
  std::map<VarRef, Expr> substitution;
  NetworkDef module = ban;
  for (int v : fvs.vertices) {
    const std::string& node = ban.nodes[static_cast<std::size_t>(v)];
    std::string label = "alpha_" + node;
    for (int suffix = 2; taken.count(label); ++suffix) {
      label = "alpha_" + node + "_" + std::to_string(suffix);
    }
    taken.insert(label);
    result.cut_nodes.push_back(node);
    result.fresh_inputs[node] = label;
    result.wiring[label] = node;
    module.inputs.push_back(label);
    substitution.emplace(VarRef::node(node), Expr::var(VarRef::input(label)));
  }
  for (auto& local : module.locals) local = substitute(local, substitution);
  result.module = std::move(module);
  return result;
}

bool verify_unfolding(const NetworkDef& ban, const UnfoldResult& result,
                      int fan_in_cap) {
  if (!is_acyclic(result.module, fan_in_cap)) return false;
  const NetworkDef rewired = recursive_wiring(result.module, result.wiring);
  if (!rewired.is_closed()) return false;
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(rewired.nodes) != sorted(ban.nodes)) return false;
  return semantically_equal(rewired, ban, fan_in_cap);
}

}  // namespace banopt
