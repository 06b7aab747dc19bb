#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mts/adversaries.hpp"
#include "mts/collective.hpp"
#include "mts/discretizer.hpp"
#include "mts/strategies.hpp"
#include "mts/transport.hpp"
#include "oracles.hpp"

using namespace mts;

TEST_CASE("initial assignments are canonical") {
  CHECK(initial_assignment(MassVector(4, {4, 0})).positions == std::vector<int>{0, 0, 0, 0});
  CHECK(initial_assignment(MassVector(4, {2, 2})).positions == std::vector<int>{0, 0, 1, 1});

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const MassVector x = oracle::random_mass(4, 9, rng);
    CHECK(initial_assignment(x).counts(4) == x.raw());
  }
}

TEST_CASE("reassign moves the lowest agents first and matches the plan cost") {
  const MetricSpace m = MetricSpace::uniform(2);
  const MassVector from(4, {4, 0});
  const MassVector to(4, {2, 2});
  const auto result = reassign(m, initial_assignment(from), from, to);
  CHECK(result.next.counts(2) == to.raw());
  REQUIRE(result.moves.size() == 2);
  CHECK(result.moves[0].agent == 0);
  CHECK(result.moves[1].agent == 1);
  double moved = 0.0;
  for (const AgentMove& mv : result.moves) moved += m.distance(mv.from, mv.to);
  CHECK(moved / 4.0 == ot_cost(m, from, to));

  const auto unchanged = reassign(m, initial_assignment(from), from, from);
  CHECK(unchanged.moves.empty());

  CHECK_THROWS_AS(reassign(m, initial_assignment(to), from, to), std::invalid_argument);
}

TEST_CASE("per-step agent counts equal the integral plan exactly") {
  Rng rng(15);
  const MetricSpace m = MetricSpace::random(3, 8);
  AgentAssignment a = initial_assignment(MassVector::point_mass(3, 0, 9));
  MassVector prev = MassVector::point_mass(3, 0, 9);
  for (int t = 0; t < 12; ++t) {
    const MassVector next = oracle::random_mass(3, 9, rng);
    const auto result = reassign(m, a, prev, next);
    const Coupling plan = ot(m, prev, next).plan;
    std::vector<std::vector<Units>> counted(3, std::vector<Units>(3, 0));
    for (const AgentMove& mv : result.moves) ++counted[mv.from][mv.to];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(counted[i][j] == plan.flow[i][j]);
    a = result.next;
    prev = next;
  }
}

TEST_CASE("a point-mass trace collapses to identical agents") {
  const MetricSpace m = MetricSpace::uniform(3);
  FractionalTrace x{MassVector::point_mass(3, 0, 6), {}};
  for (int p : {1, 2, 0}) x.states.push_back(MassVector::point_mass(3, p, 6));
  const CostSequence costs = random_costs(3, 3, 4, 1.0);
  const CollectiveRun run = realize_collective(m, x, costs);
  REQUIRE(run.agents.size() == 6);
  for (const auto& agent : run.agents) {
    CHECK(agent.initial == run.agents.front().initial);
    CHECK(agent.states == run.agents.front().states);
  }
  CHECK(run.average.total == doctest::Approx(run.per_agent.front().total));
}

TEST_CASE("the collective average reproduces the fractional cost") {
  Rng rng(25);
  const MetricSpace m = MetricSpace::random(3, 31);
  DiscretizerConfig cfg;
  cfg.k = 9;
  const FractionalTrace y = random_trace(3, 2 * 3 * 9, 20, 0, 55);
  const FractionalTrace x = discretize(m, cfg, y).x_trace;
  const CostSequence costs = random_costs(3, 20, 99, 1.0);

  const CollectiveRun run = realize_collective(m, x, costs);
  const CostBreakdown frac = fractional_cost(m, x, costs);
  const double tol = 1e-9 * m.diameter() * costs.length();
  CHECK(std::abs(run.average.movement - frac.movement) <= tol);
  CHECK(std::abs(run.average.service - frac.service) <= tol);

  // Counting vector equals k * x(t) exactly at every t.
  std::vector<std::vector<int>> positions(run.agents.size());
  for (int t = 0; t < x.length(); ++t) {
    std::vector<Units> counts(3, 0);
    for (const auto& agent : run.agents) ++counts[agent.states[t]];
    CHECK(counts == x.states[t].raw());
  }
}

TEST_CASE("branch sampling follows one agent") {
  const MetricSpace m = MetricSpace::uniform(2);
  FractionalTrace x{MassVector(4, {2, 2}), {MassVector(4, {4, 0}), MassVector(4, {0, 4})}};
  const CostSequence costs = random_costs(2, 2, 3, 1.0);
  const CollectiveRun run = realize_collective(m, x, costs);
  const IntegralTrajectory branch = sample_branch(run, 17);
  bool found = false;
  for (const auto& agent : run.agents)
    found = found || (agent.initial == branch.initial && agent.states == branch.states);
  CHECK(found);

  const IntegralTrajectory again = sample_branch(run, 17);
  CHECK(again.initial == branch.initial);
  CHECK(again.states == branch.states);
}
