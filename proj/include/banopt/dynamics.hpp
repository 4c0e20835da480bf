#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "banopt/network.hpp"

namespace banopt {

// Refuse exhaustive dynamics beyond this many automata by default; the
// successor array has 2^n entries.
inline constexpr int kDefaultMaxStateBits = 24;

// Configurations are packed into unsigned integers with the first declared
// node as the least significant bit.
using Config = std::uint64_t;

struct DynamicsGraph {
  int width = 0;
  std::vector<Config> successor;  // successor[x] = F(x), total
};

// A cycle of the dynamics, rotated to start at its numerically smallest
// configuration. Length 1 is a fixed point.
struct Attractor {
  std::vector<Config> states;

  std::size_t length() const { return states.size(); }
  friend bool operator==(const Attractor&, const Attractor&) = default;
};

// Input values over steps 1..steps for every input of a module.
struct InputSequence {
  std::vector<std::string> labels;
  int steps = 0;
  std::vector<bool> values;  // values[(t-1) * labels.size() + i]

  bool value(std::size_t input, int t) const {
    return values[static_cast<std::size_t>(t - 1) * labels.size() + input];
  }
  // Unpacks `bits` row-major (step 1 first, labels in order) — handy for
  // exhaustively enumerating all sequences.
  static InputSequence from_bits(std::vector<std::string> labels, int steps,
                                 std::uint64_t bits);
};

std::string config_to_string(Config config, const NetworkDef& net);
Config config_from_string(const std::string& text, const NetworkDef& net);

// Locals precompiled to lookup tables for fast stepping of a closed network.
class CompiledNetwork {
 public:
  explicit CompiledNetwork(const NetworkDef& net, int fan_in_cap = kDefaultFanInCap);
  int width() const { return width_; }
  Config step(Config config) const;

 private:
  struct Row {
    std::vector<int> positions;
    std::vector<std::uint64_t> words;
  };
  std::vector<Row> rows_;
  int width_ = 0;
};

// One parallel update of a closed network.
Config step(const NetworkDef& net, Config config, int fan_in_cap = kDefaultFanInCap);

DynamicsGraph full_dynamics(const NetworkDef& net,
                            int max_state_bits = kDefaultMaxStateBits,
                            int fan_in_cap = kDefaultFanInCap);

// All cycles of the successor graph, rotation-normalized and sorted by
// (length, smallest state).
std::vector<Attractor> attractors(const DynamicsGraph& graph);
std::vector<Attractor> attractors(const NetworkDef& net,
                                  int max_state_bits = kDefaultMaxStateBits,
                                  int fan_in_cap = kDefaultFanInCap);

// Updates a module `sequence.steps` times, step t reading input values
// sequence(., t).
Config module_trajectory(const NetworkDef& net, Config start,
                         const InputSequence& sequence,
                         int fan_in_cap = kDefaultFanInCap);

// Per-step restriction of the cycle to the given nodes, packed with
// nodes[0] as the least significant bit.
std::vector<std::uint64_t> attractor_trace(const Attractor& attractor,
                                           const NetworkDef& net,
                                           const std::vector<std::string>& nodes);

// True iff a length-preserving bijection matches the attractor sets such
// that paired cycles agree, up to rotation, on the traces of `cut_nodes` in
// `a` and their images under `renaming` in `b`.
bool isomorphic_attractors(const NetworkDef& a, const NetworkDef& b,
                           const std::vector<std::string>& cut_nodes,
                           const std::map<std::string, std::string>& renaming,
                           int max_state_bits = kDefaultMaxStateBits,
                           int fan_in_cap = kDefaultFanInCap);

}  // namespace banopt
