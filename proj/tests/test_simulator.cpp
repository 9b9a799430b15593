#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "prefatt/recurrence.hpp"
#include "prefatt/rng.hpp"
#include "prefatt/simulator.hpp"
#include "prefatt/validation.hpp"
#include "support/enumeration.hpp"

using namespace prefatt;

namespace {

// Hand-fed uniform source for exercising specific branches.
struct FakeStream {
  std::vector<double> values;
  std::size_t next = 0;
  double next_uniform() {
    REQUIRE(next < values.size());
    return values[next++];
  }
};

constexpr double kLargestUniform = 0x1.fffffffffffffp-1;  // biggest value < 1

}  // namespace

TEST_CASE("RngStream reproduces the documented bit mapping") {
  RngStream stream(77);
  std::mt19937_64 reference(77);
  for (int i = 0; i < 5; ++i) {
    const std::uint64_t word = reference();
    CHECK(stream.next_uniform() ==
          static_cast<double>(word >> 11) * 0x1.0p-53);
  }
  RngStream words(123456789);
  std::mt19937_64 raw(123456789);
  for (int i = 0; i < 5; ++i) CHECK(words.next_u64() == raw());
}

TEST_CASE("uniforms stay in [0, 1)") {
  RngStream stream(2024);
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.next_uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("derived trial seeds are the splitmix64 outputs") {
  const std::uint64_t master = 42;
  std::uint64_t state = master;
  for (std::uint64_t i = 0; i < 4; ++i) {
    state += kSplitMix64Gamma;
    CHECK(derive_trial_seed(master, i) == splitmix64_mix(state));
  }
}

TEST_CASE("marginal chain follows the gain rule exactly") {
  // At t=2 the gain probability is 1/3; strict comparison decides ties.
  FakeStream gain{{0.0}};
  CHECK(simulate_marginal(1, 2, gain) == 2);
  FakeStream stay{{0.5}};
  CHECK(simulate_marginal(1, 2, stay) == 1);
  FakeStream tie{{1.0 / 3.0}};
  CHECK(simulate_marginal(1, 2, tie) == 1);
  FakeStream below{{std::nextafter(1.0 / 3.0, 0.0)}};
  CHECK(simulate_marginal(1, 2, below) == 2);

  FakeStream untouched{{}};
  CHECK(simulate_marginal(4, 4, untouched) == 1);
  CHECK(untouched.next == 0);

  FakeStream all_gain{{0.0, 0.0, 0.0}};
  CHECK(simulate_marginal(1, 4, all_gain) == 4);
}

TEST_CASE("graph step branches: attach versus self-loop") {
  // t=2: budget 3, node 1 holds mass 1, so attach iff u < 1/3.
  FakeStream attach{{0.2}};
  GraphState g1 = simulate_graph(2, attach);
  CHECK(g1.degrees == std::vector<unsigned>{2, 1});
  FakeStream selfloop{{0.5}};
  GraphState g2 = simulate_graph(2, selfloop);
  CHECK(g2.degrees == std::vector<unsigned>{1, 2});

  // t=3 from {1,2}: budget 5; node 1 owns [0,1), node 2 owns [1,3),
  // self-loop owns [3,5).
  FakeStream to1{{0.5, 0.1}};
  CHECK(simulate_graph(3, to1).degrees == std::vector<unsigned>{2, 2, 1});
  FakeStream to2{{0.5, 0.3}};
  CHECK(simulate_graph(3, to2).degrees == std::vector<unsigned>{1, 3, 1});
  FakeStream loop{{0.5, 0.9}};
  CHECK(simulate_graph(3, loop).degrees == std::vector<unsigned>{1, 2, 2});
}

TEST_CASE("graph step survives the extreme uniform values") {
  FakeStream high{{kLargestUniform, kLargestUniform, kLargestUniform}};
  const GraphState g = simulate_graph(4, high);
  CHECK(g.degrees.size() == 4);
  CHECK(g.total_degree() == 7);
  FakeStream low{{0.0, 0.0, 0.0}};
  const GraphState h = simulate_graph(4, low);
  CHECK(h.total_degree() == 7);
  CHECK(h.degrees[0] == 4);  // u=0 always lands on node 1
}

TEST_CASE("graph invariants hold along a long run") {
  RngStream stream(9001);
  const GraphState g = simulate_graph(50, stream);
  CHECK(g.time == 50);
  CHECK(g.degrees.size() == 50);
  CHECK(g.total_degree() == 99);
  for (unsigned d : g.degrees) CHECK(d >= 1);
}

TEST_CASE("tracked birth step is attach-only") {
  // m=2, t=2: one existing node takes the edge no matter the draw, and the
  // tracked node is born with degree 1.
  for (double u : {0.0, 0.5, kLargestUniform}) {
    FakeStream stream{{u}};
    CHECK(simulate_graph_tracked(2, 2, stream) == 1);
    CHECK(stream.next == 1);  // the conditioned step still consumes one draw
  }

  // m=3, t=3 from {2,1}: renormalized budget 3; node 1 takes u < 2/3,
  // node 2 absorbs the rest. The newborn keeps degree 1 either way.
  FakeStream first{{0.2, 0.5}};
  CHECK(simulate_graph_tracked(3, 3, first) == 1);
  FakeStream second{{0.2, 0.9}};
  CHECK(simulate_graph_tracked(3, 3, second) == 1);
}

TEST_CASE("for the first node, marginal and graph modes coincide pathwise") {
  // The scan assigns node 1 the interval [0, deg/(2t-1)), which is exactly
  // the marginal gain event, and both modes consume one uniform per step.
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    RngStream a = derive_stream(5, trial);
    RngStream b = derive_stream(5, trial);
    CHECK(simulate_marginal(1, 10, a) == simulate_graph_tracked(1, 10, b));
  }
}

TEST_CASE("run_trials at the trivial horizon") {
  SimulationConfig config;
  config.mode = SimMode::marginal;
  config.birth_index = 1;
  config.horizon = 1;
  config.trials = 10;
  const EmpiricalDistribution emp = run_trials(config);
  CHECK(emp.counts == std::vector<std::uint64_t>{10});
  CHECK(emp.count(1) == 10);
  CHECK(emp.count(2) == 0);
  CHECK(emp.count(0) == 0);
}

TEST_CASE("run_trials is deterministic and thread-count independent") {
  SimulationConfig config;
  config.mode = SimMode::graph;
  config.birth_index = 3;
  config.horizon = 8;
  config.trials = 500;
  config.master_seed = 99;
  const EmpiricalDistribution serial = run_trials(config, 1);
  const EmpiricalDistribution again = run_trials(config, 1);
  const EmpiricalDistribution wide = run_trials(config, 4);
  CHECK(serial == again);
  CHECK(serial == wide);
  std::uint64_t total = 0;
  for (std::uint64_t c : serial.counts) total += c;
  CHECK(total == config.trials);
}

TEST_CASE("run_trials draws each trial from its derived stream") {
  SimulationConfig config;
  config.mode = SimMode::marginal;
  config.birth_index = 1;
  config.horizon = 6;
  config.trials = 5;
  config.master_seed = 123;
  const EmpiricalDistribution emp = run_trials(config, 1);

  std::vector<std::uint64_t> expected(6, 0);
  for (std::uint64_t i = 0; i < config.trials; ++i) {
    RngStream stream = derive_stream(config.master_seed, i);
    ++expected[simulate_marginal(1, 6, stream) - 1];
  }
  CHECK(emp.counts == expected);
}

TEST_CASE("conditional law from brute-force enumeration matches the tables") {
  for (unsigned m = 1; m <= 3; ++m) {
    const DistributionTable table = general_node_table(m, 6);
    for (unsigned n = m; n <= 6; ++n) {
      const DegreeDistribution oracle = prefatt_test::enumerate_node_law(m, n);
      CHECK(oracle == table.at(n));
    }
  }
}

TEST_CASE("unconditional birth mass shows why conditioning is needed") {
  // A node born at step m self-loops with probability 2/(2m-1) and starts
  // at degree 2; the analytic tables condition that branch away.
  for (unsigned m : {2u, 3u, 4u}) {
    const std::vector<Rational> mass = prefatt_test::enumerate_unconditional(m, m);
    CHECK(mass[0] == make_rational(2L * m - 3, 2L * m - 1));
    CHECK(mass[1] == make_rational(2, 2L * m - 1));
  }
  // And one horizon later the unconditional law no longer matches the table.
  const std::vector<Rational> later = prefatt_test::enumerate_unconditional(2, 3);
  const DistributionTable table = general_node_table(2, 3);
  CHECK(later[0] != table.at(3).prob(1));
}

TEST_CASE("empirical frequencies track the exact law at the default seed") {
  // Exact first-node row at n=3 is {8/15, 1/3, 2/15}.
  SimulationConfig config;
  config.birth_index = 1;
  config.horizon = 3;
  config.trials = 1000000;
  config.master_seed = 42;
  const DistributionTable table = first_node_table(3);

  config.mode = SimMode::marginal;
  const EmpiricalDistribution marginal = run_trials(config);
  const double freq1 = static_cast<double>(marginal.count(1)) / 1e6;
  CHECK(std::abs(freq1 - 8.0 / 15.0) <= 0.003);

  config.mode = SimMode::graph;
  const EmpiricalDistribution graph = run_trials(config);
  CHECK(tv_distance(table.at(3), graph) <= 0.005);
}

TEST_CASE("argument validation") {
  RngStream stream(1);
  CHECK_THROWS_AS(simulate_marginal(0, 3, stream), std::invalid_argument);
  CHECK_THROWS_AS(simulate_marginal(5, 3, stream), std::invalid_argument);
  CHECK_THROWS_AS(simulate_graph(0, stream), std::invalid_argument);
  CHECK_THROWS_AS(simulate_graph_tracked(0, 3, stream), std::invalid_argument);
  CHECK_THROWS_AS(simulate_graph_tracked(4, 3, stream), std::invalid_argument);

  SimulationConfig bad;
  bad.birth_index = 3;
  bad.horizon = 2;
  CHECK_THROWS_AS(run_trials(bad), std::invalid_argument);
  SimulationConfig zero;
  zero.trials = 0;
  CHECK_THROWS_AS(run_trials(zero), std::invalid_argument);
}
