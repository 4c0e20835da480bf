#include <doctest.h>

#include "banopt/errors.hpp"
#include "banopt/pipeline.hpp"
#include "testutil.hpp"

using namespace banopt;
using testutil::make_network;

TEST_CASE("theorem hypotheses hold between the two worked modules") {
  const NetworkDef module = testutil::m_a();
  const NetworkDef smaller =
      make_network("M_A_opt", {"a", "b", "d"}, {"alpha"}, {"alpha", "a", "!b"});
  const std::map<std::string, std::string> h{{"d", "d"}};
  const std::map<std::string, std::string> g{{"alpha", "alpha"}};
  CHECK(check_theorem_hypotheses(module, smaller, {"d"}, h, g));

  NetworkDef broken = smaller;
  broken.locals[2] = Expr::var(VarRef::node("b"));
  CHECK_FALSE(check_theorem_hypotheses(module, broken, {"d"}, h, g));

  CHECK_THROWS_AS(
      check_theorem_hypotheses(module, smaller, {"d"}, {{"d", "zz"}}, g),
      std::invalid_argument);
}

TEST_CASE("hypotheses respect the input renaming") {
  const NetworkDef left = make_network("L", {"s"}, {"alpha"}, {"!alpha"});
  const NetworkDef right = make_network("R", {"s"}, {"beta"}, {"!beta"});
  CHECK(check_theorem_hypotheses(left, right, {"s"}, {{"s", "s"}},
                                 {{"alpha", "beta"}}));
  const NetworkDef wrong = make_network("R", {"s"}, {"beta"}, {"beta"});
  CHECK_FALSE(check_theorem_hypotheses(left, wrong, {"s"}, {{"s", "s"}},
                                       {{"alpha", "beta"}}));
}

TEST_CASE("optimizing the four-node example yields the expected network") {
  const PipelineReport report = optimize(testutil::f_a());

  CHECK(report.nodes_before == 4);
  CHECK(report.nodes_after == 3);
  CHECK(report.reduction_exponent == 1);
  CHECK(report.cut_set == std::vector<std::string>{"d"});
  CHECK(report.fvs_exact);
  CHECK(report.cut_outputs.at("d").delay == 3);
  CHECK(report.node_map == std::map<std::string, std::string>{{"d", "d"}});
  CHECK(report.final_wiring == Wiring{{"alpha_d", "d"}});
  CHECK(report.rewrite_log ==
        std::vector<std::string>{"merge c -> b", "simplify d"});

  CHECK(report.optimized.nodes == std::vector<std::string>{"a", "b", "d"});
  CHECK(semantically_equal(report.optimized, testutil::f_prime_a()));

  REQUIRE(report.verified.has_value());
  CHECK(*report.verified);
  auto cycle_lengths = [](const std::vector<Attractor>& list) {
    std::vector<std::size_t> out;
    for (const auto& a : list) out.push_back(a.length());
    return out;
  };
  CHECK(cycle_lengths(*report.attractors_before) ==
        std::vector<std::size_t>{2, 6});
  CHECK(cycle_lengths(*report.attractors_after) == std::vector<std::size_t>{2, 6});
}

TEST_CASE("optimizing the yeast example reduces ten nodes to eight") {
  const PipelineReport report = optimize(testutil::f_b());

  CHECK(report.nodes_before == 10);
  CHECK(report.nodes_after == 8);
  CHECK(report.reduction_exponent == 2);
  CHECK(report.cut_set ==
        std::vector<std::string>{"St", "Sl", "Sk", "Pp", "C", "C*"});
  CHECK(semantically_equal(report.optimized, testutil::f_prime_b()));
  REQUIRE(report.verified.has_value());
  CHECK(*report.verified);
}

TEST_CASE("an acyclic network collapses to an empty network") {
  const NetworkDef acyclic =
      make_network("tri", {"a", "b", "c"}, {}, {"1", "a", "a & b"});
  const PipelineReport report = optimize(acyclic);
  CHECK(report.cut_set.empty());
  CHECK(report.nodes_after == 0);
  CHECK(report.reduction_exponent == 3);
  REQUIRE(report.verified.has_value());
  CHECK(*report.verified);
  // Both sides have exactly one attractor: a fixed point.
  CHECK(report.attractors_before->size() == 1);
  CHECK(report.attractors_before->front().length() == 1);
  CHECK(report.attractors_after->size() == 1);
}

TEST_CASE("merged cut nodes come back as function-copy aliases") {
  // Both automata are self-looped twins, so both are cut and their output
  // functions coincide; the node map must still be a bijection.
  const NetworkDef twins =
      make_network("tw", {"a", "b"}, {}, {"a | b", "a | b"});
  const PipelineReport report = optimize(twins);
  CHECK(report.cut_set == std::vector<std::string>{"a", "b"});
  CHECK(report.nodes_after == 2);
  CHECK(semantically_equal(report.optimized, twins));
  bool saw_alias = false;
  for (const auto& line : report.rewrite_log) {
    if (line.rfind("alias ", 0) == 0) saw_alias = true;
  }
  CHECK(saw_alias);
  REQUIRE(report.verified.has_value());
  CHECK(*report.verified);
}

TEST_CASE("promise violations abort the pipeline") {
  const NetworkDef broken = make_network("p", {"a", "b"}, {}, {"b & !b", "a"});
  CHECK_THROWS_AS(optimize(broken), PromiseError);
}

TEST_CASE("open networks are rejected") {
  CHECK_THROWS_AS(optimize(testutil::m_a()), OpenInputsError);
}

TEST_CASE("verify recomputes the isomorphism from scratch") {
  const PipelineReport report = optimize(testutil::f_a());
  CHECK(verify(testutil::f_a(), report));

  PipelineReport corrupted = report;
  corrupted.optimized =
      make_network("fake", {"a", "b", "d"}, {}, {"0", "0", "0"});
  CHECK_FALSE(verify(testutil::f_a(), corrupted));
}

TEST_CASE("dynamics are skipped above the state cap") {
  PipelineOptions options;
  options.max_state_bits = 3;
  const PipelineReport report = optimize(testutil::f_a(), options);
  CHECK(report.nodes_after == 3);
  CHECK_FALSE(report.verified.has_value());
  CHECK_FALSE(report.attractors_before.has_value());
  CHECK_THROWS_AS(verify(testutil::f_a(), report, 3), StateCapError);
}

TEST_CASE("random promise-passing networks optimize soundly") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const NetworkDef net = testutil::random_ban(rng, n, 3);
    const PipelineReport report = optimize(net);
    CHECK(report.nodes_after <= n);
    CHECK(report.reduction_exponent == n - report.nodes_after);
    REQUIRE(report.verified.has_value());
    CHECK(*report.verified);
    CHECK(verify(net, report));
    // With name-preserving synthesis the final wiring is the unfolding's.
    for (const auto& [label, node] : report.wiring) {
      CHECK(report.final_wiring.at(label) == node);
    }
  }
}
