#include "banopt/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "banopt/errors.hpp"

namespace banopt {

InputSequence InputSequence::from_bits(std::vector<std::string> labels, int steps,
                                       std::uint64_t bits) {
  InputSequence j;
  j.labels = std::move(labels);
  j.steps = steps;
  const std::size_t total = j.labels.size() * static_cast<std::size_t>(steps);
  j.values.resize(total);
  for (std::size_t i = 0; i < total; ++i) j.values[i] = (bits >> i) & 1;
  return j;
}

std::string config_to_string(Config config, const NetworkDef& net) {
  std::string out(net.node_count(), '0');
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if ((config >> i) & 1) out[i] = '1';
  }
  return out;
}

Config config_from_string(const std::string& text, const NetworkDef& net) {
  if (text.size() != net.node_count()) {
    throw std::invalid_argument("configuration '" + text + "' has wrong width");
  }
  Config c = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      c |= Config{1} << i;
    } else if (text[i] != '0') {
      throw std::invalid_argument("configuration must be a 0/1 string");
    }
  }
  return c;
}

namespace {

bool table_bit(const std::vector<std::uint64_t>& words, std::uint64_t row) {
  return (words[row >> 6] >> (row & 63)) & 1;
}

}  // namespace

CompiledNetwork::CompiledNetwork(const NetworkDef& net, int fan_in_cap)
    : width_(static_cast<int>(net.node_count())) {
  rows_.reserve(net.node_count());
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    std::set<VarRef> sv = syntactic_vars(net.locals[i]);
    if (static_cast<int>(sv.size()) > fan_in_cap) {
      throw FanInCapError("node '" + net.nodes[i] + "' has fan-in " +
                          std::to_string(sv.size()) + ", exceeding the cap of " +
                          std::to_string(fan_in_cap));
    }
    Row row;
    std::vector<VarRef> vars;
    for (const VarRef& v : sv) {
      if (v.kind != VarKind::Node) {
        throw OpenInputsError("network has open input '" + v.label +
                              "'; close it with a wiring first");
      }
      vars.push_back(v);
      row.positions.push_back(net.node_index(v.label));
    }
    row.words = raw_table(net.locals[i], vars);
    rows_.push_back(std::move(row));
  }
}

Config CompiledNetwork::step(Config config) const {
  Config next = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& row = rows_[i];
    std::uint64_t key = 0;
    for (std::size_t b = 0; b < row.positions.size(); ++b) {
      key |= ((config >> row.positions[b]) & 1) << b;
    }
    if (table_bit(row.words, key)) next |= Config{1} << i;
  }
  return next;
}

Config step(const NetworkDef& net, Config config, int fan_in_cap) {
  return CompiledNetwork(net, fan_in_cap).step(config);
}

DynamicsGraph full_dynamics(const NetworkDef& net, int max_state_bits,
                            int fan_in_cap) {
  const int n = static_cast<int>(net.node_count());
  if (n > max_state_bits) {
    throw StateCapError("network has " + std::to_string(n) +
                        " automata; the state-space cap is " +
                        std::to_string(max_state_bits));
  }
  const CompiledNetwork compiled(net, fan_in_cap);
  DynamicsGraph g;
  g.width = n;
  const std::uint64_t count = std::uint64_t{1} << n;
  g.successor.resize(count);
  for (std::uint64_t x = 0; x < count; ++x) g.successor[x] = compiled.step(x);
  return g;
}

std::vector<Attractor> attractors(const DynamicsGraph& graph) {
  const std::uint64_t count = graph.successor.size();
  std::vector<std::uint8_t> color(count, 0);  // 0 new, 1 on path, 2 resolved
  std::vector<std::uint64_t> position(count, 0);
  std::vector<Config> path;
  std::vector<Attractor> out;

  for (std::uint64_t start = 0; start < count; ++start) {
    if (color[start] != 0) continue;
    path.clear();
    Config u = start;
    while (color[u] == 0) {
      color[u] = 1;
      position[u] = path.size();
      path.push_back(u);
      u = graph.successor[u];
    }
    if (color[u] == 1) {
      Attractor a;
      a.states.assign(path.begin() + static_cast<long>(position[u]), path.end());
      const auto smallest = std::min_element(a.states.begin(), a.states.end());
      std::rotate(a.states.begin(), smallest, a.states.end());
      out.push_back(std::move(a));
    }
    for (Config v : path) color[v] = 2;
  }

  std::sort(out.begin(), out.end(), [](const Attractor& a, const Attractor& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.states < b.states;
  });
  return out;
}

std::vector<Attractor> attractors(const NetworkDef& net, int max_state_bits,
                                  int fan_in_cap) {
  return attractors(full_dynamics(net, max_state_bits, fan_in_cap));
}

Config module_trajectory(const NetworkDef& net, Config start,
                         const InputSequence& sequence, int fan_in_cap) {
  // Resolve sequence labels against the module's inputs once.
  std::vector<int> label_of_input(net.inputs.size(), -1);
  for (std::size_t i = 0; i < net.inputs.size(); ++i) {
    for (std::size_t l = 0; l < sequence.labels.size(); ++l) {
      if (sequence.labels[l] == net.inputs[i]) {
        label_of_input[i] = static_cast<int>(l);
        break;
      }
    }
    if (label_of_input[i] < 0) {
      throw std::invalid_argument("input sequence is missing values for '" +
                                  net.inputs[i] + "'");
    }
  }

  struct Src {
    bool is_input;
    int index;
  };
  struct Row {
    std::vector<Src> sources;
    std::vector<std::uint64_t> words;
  };
  std::vector<Row> rows;
  rows.reserve(net.node_count());
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    std::set<VarRef> sv = syntactic_vars(net.locals[i]);
    if (static_cast<int>(sv.size()) > fan_in_cap) {
      throw FanInCapError("node '" + net.nodes[i] + "' exceeds the fan-in cap");
    }
    Row row;
    std::vector<VarRef> vars;
    for (const VarRef& v : sv) {
      vars.push_back(v);
      if (v.kind == VarKind::Node) {
        row.sources.push_back({false, net.node_index(v.label)});
      } else {
        row.sources.push_back({true, label_of_input[static_cast<std::size_t>(
                                         net.input_index(v.label))]});
      }
    }
    row.words = raw_table(net.locals[i], vars);
    rows.push_back(std::move(row));
  }

  Config x = start;
  for (int t = 1; t <= sequence.steps; ++t) {
    Config next = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::uint64_t key = 0;
      for (std::size_t b = 0; b < rows[i].sources.size(); ++b) {
        const Src& s = rows[i].sources[b];
        const bool bit = s.is_input
                             ? sequence.value(static_cast<std::size_t>(s.index), t)
                             : ((x >> s.index) & 1) != 0;
        key |= std::uint64_t{bit} << b;
      }
      if (table_bit(rows[i].words, key)) next |= Config{1} << i;
    }
    x = next;
  }
  return x;
}

std::vector<std::uint64_t> attractor_trace(const Attractor& attractor,
                                           const NetworkDef& net,
                                           const std::vector<std::string>& nodes) {
  std::vector<int> positions;
  positions.reserve(nodes.size());
  for (const auto& id : nodes) {
    const int i = net.node_index(id);
    if (i < 0) throw std::invalid_argument("unknown node '" + id + "'");
    positions.push_back(i);
  }
  std::vector<std::uint64_t> trace;
  trace.reserve(attractor.length());
  for (Config state : attractor.states) {
    std::uint64_t row = 0;
    for (std::size_t b = 0; b < positions.size(); ++b) {
      row |= ((state >> positions[b]) & 1) << b;
    }
    trace.push_back(row);
  }
  return trace;
}

namespace {

std::vector<std::uint64_t> smallest_rotation(const std::vector<std::uint64_t>& seq) {
  std::vector<std::uint64_t> best = seq;
  std::vector<std::uint64_t> candidate = seq;
  for (std::size_t shift = 1; shift < seq.size(); ++shift) {
    std::rotate(candidate.begin(), candidate.begin() + 1, candidate.end());
    if (candidate < best) best = candidate;
  }
  return best;
}

}  // namespace

bool isomorphic_attractors(const NetworkDef& a, const NetworkDef& b,
                           const std::vector<std::string>& cut_nodes,
                           const std::map<std::string, std::string>& renaming,
                           int max_state_bits, int fan_in_cap) {
  std::vector<std::string> mapped;
  std::set<std::string> images;
  mapped.reserve(cut_nodes.size());
  for (const auto& id : cut_nodes) {
    auto it = renaming.find(id);
    if (it == renaming.end()) {
      throw std::invalid_argument("renaming is not total on the cut set");
    }
    if (!images.insert(it->second).second) {
      throw std::invalid_argument("renaming is not injective");
    }
    mapped.push_back(it->second);
  }

  const auto attractors_a = attractors(a, max_state_bits, fan_in_cap);
  const auto attractors_b = attractors(b, max_state_bits, fan_in_cap);
  if (attractors_a.size() != attractors_b.size()) return false;

  using Key = std::pair<std::size_t, std::vector<std::uint64_t>>;
  std::vector<Key> keys_a, keys_b;
  for (const auto& at : attractors_a) {
    keys_a.emplace_back(at.length(), smallest_rotation(attractor_trace(at, a, cut_nodes)));
  }
  for (const auto& at : attractors_b) {
    keys_b.emplace_back(at.length(), smallest_rotation(attractor_trace(at, b, mapped)));
  }
  std::sort(keys_a.begin(), keys_a.end());
  std::sort(keys_b.begin(), keys_b.end());
  return keys_a == keys_b;
}

}  // namespace banopt
