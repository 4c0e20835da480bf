// Acceptance suite: every gate the tool has to clear, one line of output
// per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "banopt/cli.hpp"
#include "banopt/dynamics.hpp"
#include "banopt/emit.hpp"
#include "banopt/netfile.hpp"
#include "banopt/outputs.hpp"
#include "banopt/pipeline.hpp"
#include "banopt/synthesis.hpp"
#include "banopt/unfold.hpp"
#include "testutil.hpp"

using namespace banopt;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  double time_limit_seconds;
  std::function<void(std::vector<std::string>&)> body;
};

void require(std::vector<std::string>& problems, bool condition,
             const std::string& what) {
  if (!condition) problems.push_back(what);
}

void run_criterion(int number, const Criterion& criterion) {
  std::vector<std::string> problems;
  const auto start = Clock::now();
  try {
    criterion.body(problems);
  } catch (const std::exception& e) {
    problems.push_back(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (criterion.time_limit_seconds > 0 && elapsed > criterion.time_limit_seconds) {
    std::ostringstream limit;
    limit << "took " << elapsed << "s, limit " << criterion.time_limit_seconds
          << "s";
    problems.push_back(limit.str());
  }
  if (problems.empty()) {
    std::printf("PASS  %d  %s (%.2fs)\n", number, criterion.name.c_str(), elapsed);
  } else {
    ++failures;
    std::printf("FAIL  %d  %s (%.2fs)\n", number, criterion.name.c_str(), elapsed);
    for (const auto& p : problems) std::printf("      - %s\n", p.c_str());
  }
}

std::vector<std::size_t> cycle_lengths(const std::vector<Attractor>& list) {
  std::vector<std::size_t> out;
  for (const auto& a : list) out.push_back(a.length());
  return out;
}

// 1. Attractors of the first golden example, bit for bit.
void golden_a_attractors(std::vector<std::string>& problems) {
  const NetworkFile file =
      load_network_file(testutil::fixture_path("f_a.ban"));
  const NetworkDef net = closed_network(file);

  require(problems, step(net, config_from_string("1001", net)) ==
                        config_from_string("1111", net),
          "F_A(1001) != 1111");

  const auto found = attractors(net);
  require(problems, found.size() == 2, "expected exactly two attractors");
  if (found.size() == 2) {
    require(problems,
            found[0].states == std::vector<Config>{
                                   config_from_string("1000", net),
                                   config_from_string("0111", net)},
            "2-cycle is not {1000, 0111}");
    require(problems,
            found[1].states == std::vector<Config>{
                                   config_from_string("0000", net),
                                   config_from_string("0001", net),
                                   config_from_string("1001", net),
                                   config_from_string("1111", net),
                                   config_from_string("1110", net),
                                   config_from_string("0110", net)},
            "6-cycle is not 0000->0001->1001->1111->1110->0110");
  }

  std::ostringstream out, err;
  const int code = run_cli({"attractors", testutil::fixture_path("f_a.ban")},
                           out, err);
  require(problems, code == 0, "attractors command failed");
  require(problems,
          out.str().find("attractor 1: length=2: 1000 -> 0111") !=
              std::string::npos,
          "CLI did not print the 2-cycle");
}

// 2. The full pipeline on the first golden example.
void golden_a_pipeline(std::vector<std::string>& problems) {
  const PipelineReport report = optimize(testutil::f_a());
  require(problems, report.cut_set == std::vector<std::string>{"d"},
          "cut set is not {d}");
  require(problems, report.nodes_after == 3, "optimized size is not 3");
  require(problems,
          semantically_equal(report.optimized, testutil::f_prime_a()),
          "optimized network differs from the expected three-node network");
  const OutputFunction& out_d = report.cut_outputs.at("d");
  require(problems,
          out_d.delay == 3 &&
              out_d.expr == Expr::negation(Expr::var(VarRef::delayed_input(
                                "alpha_d", 3))),
          "output function of d is not the delay-3 negation");
  require(problems,
          report.node_map == std::map<std::string, std::string>{{"d", "d"}},
          "node map is not the identity on {d}");
  require(problems, report.verified.has_value() && *report.verified,
          "attractor isomorphism not confirmed");

  std::ostringstream out, err;
  const int code = run_cli({"optimize", testutil::fixture_path("f_a.ban"),
                            "--verify"},
                           out, err);
  require(problems, code == 0, "optimize --verify exited nonzero");
  require(problems,
          out.str().find("cut set (size 1): d") != std::string::npos,
          "report does not show the size-1 cut");
  require(problems,
          out.str().find("d: !alpha_d@3 (delay 3)") != std::string::npos,
          "report does not show the delay-3 output function");
}

// 3. The yeast example: analysis, output functions, and the 10 -> 8 pipeline.
void golden_b(std::vector<std::string>& problems) {
  std::ostringstream out, err;
  const int code =
      run_cli({"analyze", testutil::fixture_path("f_b.ban")}, out, err);
  require(problems, code == 0, "analyze failed");
  require(problems, out.str().find("fvs=6") != std::string::npos,
          "analyze does not report a size-6 feedback vertex set");

  const NetworkFile module_file =
      load_network_file(testutil::fixture_path("m_b.ban"));
  const NetworkDef& module = module_file.network;
  const std::vector<std::string> cut{"St", "Sl", "Sk", "Pp", "C", "C*"};
  const auto functions = output_functions(module, cut);
  auto delayed = [](const std::string& l, int d) {
    return Expr::var(VarRef::delayed_input(l, d));
  };
  const std::vector<std::pair<std::string, std::pair<Expr, int>>> expected{
      {"St", {Expr::negation(delayed("alpha_St", 1)), 1}},
      {"Sl",
       {Expr::disjunction(Expr::negation(delayed("alpha_Sl", 1)),
                          delayed("alpha_C*", 1)),
        1}},
      {"Sk",
       {Expr::disjunction(delayed("alpha_St", 1),
                          Expr::negation(delayed("alpha_Sk", 1))),
        1}},
      {"Pp",
       {Expr::disjunction(delayed("alpha_Sl", 1),
                          Expr::negation(delayed("alpha_Pp", 1))),
        1}},
      {"C",
       {Expr::disjunction(
            Expr::conjunction(
                Expr::conjunction(
                    Expr::conjunction(delayed("alpha_Sk", 2),
                                      Expr::negation(delayed("alpha_Pp", 2))),
                    delayed("alpha_C", 2)),
                delayed("alpha_C*", 2)),
            Expr::negation(delayed("alpha_Sl", 1))),
        2}},
      {"C*",
       {Expr::disjunction(delayed("alpha_C", 2),
                          Expr::negation(delayed("alpha_Pp", 2))),
        2}},
  };
  for (const auto& [node, want] : expected) {
    const OutputFunction& have = functions.at(node);
    require(problems, equivalent(have.expr, want.first),
            "output function of " + node + " is not equivalent to the expected");
    require(problems, have.delay == want.second,
            "output function of " + node + " has the wrong delay");
  }

  std::ostringstream outputs_out, outputs_err;
  const int outputs_code =
      run_cli({"outputs", testutil::fixture_path("m_b.ban"), "--nodes", "C*"},
              outputs_out, outputs_err);
  require(problems, outputs_code == 0, "outputs command failed");
  require(problems,
          outputs_out.str() == "C*: alpha_C@2 | !alpha_Pp@2 (delay 2)\n",
          "outputs did not print the expected delay-2 function for C*");

  const PipelineReport report = optimize(testutil::f_b());
  require(problems, report.nodes_after == 8, "optimized size is not 8");
  require(problems,
          semantically_equal(report.optimized, testutil::f_prime_b()),
          "optimized network differs from the expected eight-node network");
  require(problems, report.verified.has_value() && *report.verified,
          "attractor isomorphism (1024 vs 256 states) not confirmed");
}

// 4. Cycle-length multisets of the yeast network before and after.
void derived_b_fixture(std::vector<std::string>& problems) {
  const auto before = cycle_lengths(attractors(testutil::f_b()));
  const auto after = cycle_lengths(attractors(testutil::f_prime_b()));
  require(problems, !before.empty(), "no attractors found");
  require(problems, before == after,
          "cycle-length multisets differ between F_B and its optimized form");
}

// 5. End-to-end soundness over random promise-passing networks.
void random_end_to_end(std::vector<std::string>& problems) {
  std::mt19937_64 rng(101);
  const int instances = 200;
  for (int trial = 0; trial < instances; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);  // 3..8
    const NetworkDef net = testutil::random_ban(rng, n, 3);
    PipelineReport report;
    try {
      report = optimize(net);
    } catch (const std::exception& e) {
      require(problems, false,
              "instance " + std::to_string(trial) + " failed: " + e.what());
      return;
    }
    if (static_cast<int>(report.optimized.node_count()) > n) {
      require(problems, false,
              "instance " + std::to_string(trial) + " grew the network");
      return;
    }
    if (!report.verified.has_value() || !*report.verified ||
        !verify(net, report)) {
      require(problems, false,
              "instance " + std::to_string(trial) + " lost an attractor");
      return;
    }
  }
}

// 6. Output-function semantics against exhaustive module trajectories.
void random_trajectory_consistency(std::vector<std::string>& problems) {
  std::mt19937_64 rng(103);
  const int instances = 100;
  for (int trial = 0; trial < instances; ++trial) {
    const NetworkDef module = testutil::random_acyclic_module(rng, 6, 2, 3, 2);
    const auto horizons = testutil::stabilization_horizons(module);
    const auto outputs = all_output_circuits(module);
    const std::uint64_t configs = std::uint64_t{1} << module.node_count();
    for (std::size_t s = 0; s < module.node_count(); ++s) {
      // The window length is the stabilization horizon: at least the output
      // delay, and long enough that the start configuration cannot matter.
      const int k = horizons[s];
      if (outputs[s].delay > k) {
        require(problems, false, "delay exceeds the stabilization horizon");
        return;
      }
      const std::size_t bits =
          module.inputs.size() * static_cast<std::size_t>(k);
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << bits); ++j) {
        const InputSequence sequence =
            InputSequence::from_bits(module.inputs, k, j);
        const bool predicted =
            testutil::backward_eval(outputs[s].expr, sequence);
        for (Config x = 0; x < configs; ++x) {
          const Config end = module_trajectory(module, x, sequence);
          if (((end >> s) & 1) != static_cast<Config>(predicted ? 1 : 0)) {
            require(problems, false,
                    "instance " + std::to_string(trial) + " node " +
                        module.nodes[s] + " diverges from its output function");
            return;
          }
        }
      }
    }
  }
}

// 7. Exact feedback vertex sets against the exhaustive-subset oracle.
void fvs_exactness(std::vector<std::string>& problems) {
  std::mt19937_64 rng(107);
  const int instances = 100;
  for (int trial = 0; trial < instances; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);  // 4..12 vertices
    const auto adj = testutil::random_digraph(rng, n, 0.18);
    const FvsResult fvs = minimum_fvs(adj);
    if (!fvs.exact || fvs.vertices.size() != testutil::oracle_fvs_size(adj)) {
      require(problems, false,
              "instance " + std::to_string(trial) + " is not minimum");
      return;
    }
  }
}

// 8. Every synthesis rule firing preserves the protected output functions.
void rewrite_soundness(std::vector<std::string>& problems) {
  std::mt19937_64 rng(109);
  const int instances = 100;
  for (int trial = 0; trial < instances; ++trial) {
    const NetworkDef seed = testutil::random_acyclic_module(rng, 6, 2, 3, 3);
    std::vector<std::string> cut;
    for (std::size_t i = 0; i < seed.node_count(); ++i) {
      if (rng() % 2) cut.push_back(seed.nodes[i]);
    }
    if (cut.empty()) cut.push_back(seed.nodes[0]);
    const auto targets = output_functions(seed, cut);

    SynthesisInstance instance;
    instance.input_labels = seed.inputs;
    instance.targets = targets;

    std::map<std::string, std::string> alive;
    for (const auto& node : cut) alive[node] = node;
    bool sound = true;
    const RewriteObserver observer = [&](const NetworkDef& net,
                                         const std::string& event) {
      if (event.rfind("merge ", 0) == 0) {
        const auto arrow = event.find(" -> ");
        const std::string removed = event.substr(6, arrow - 6);
        const std::string survivor = event.substr(arrow + 4);
        for (auto& [name, node] : alive) {
          if (node == removed) node = survivor;
        }
      }
      for (const auto& [name, node] : alive) {
        const OutputFunction now = output_circuit(net, node);
        const OutputFunction& want = targets.at(name);
        if (now.delay != want.delay || !equivalent(now.expr, want.expr)) {
          sound = false;
        }
      }
    };
    try {
      synthesize(instance, seed, cut, kDefaultFanInCap, observer);
    } catch (const std::exception& e) {
      require(problems, false,
              "instance " + std::to_string(trial) + " failed: " + e.what());
      return;
    }
    if (!sound) {
      require(problems, false,
              "instance " + std::to_string(trial) + " broke an output mid-rewrite");
      return;
    }
  }
}

// 9. The exact oracle confirms the three-node optimum of example A.
void oracle_agreement(std::vector<std::string>& problems) {
  SynthesisInstance instance;
  instance.input_labels = {"alpha"};
  instance.targets.emplace(
      "d", make_output_function(Expr::negation(
               Expr::var(VarRef::delayed_input("alpha", 3)))));

  const auto best = exact_synthesize(instance, {3, 2});
  require(problems, best.has_value() && best->node_count() == 3,
          "minimum node count is not 3");
  const auto impossible = exact_synthesize(instance, {2, 2});
  require(problems, !impossible.has_value(),
          "two nodes should not realize a delay-3 output");

  const PipelineReport report = optimize(testutil::f_a());
  require(problems, report.nodes_after == 3,
          "greedy result for the first example is not 3 nodes");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"golden example A: attractors and single step", 1.0, golden_a_attractors},
      {"golden example A: optimisation pipeline", 1.0, golden_a_pipeline},
      {"golden example B: analysis, outputs, pipeline", 5.0, golden_b},
      {"derived fixture B: cycle-length multisets match", 5.0, derived_b_fixture},
      {"200 random networks: verified end to end", 60.0, random_end_to_end},
      {"100 random modules: trajectory consistency", 0.0,
       random_trajectory_consistency},
      {"100 random digraphs: FVS matches the oracle", 0.0, fvs_exactness},
      {"100 random modules: rewrite-rule soundness", 0.0, rewrite_soundness},
      {"exact synthesis oracle agreement", 0.0, oracle_agreement},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    run_criterion(static_cast<int>(i + 1), criteria[i]);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
