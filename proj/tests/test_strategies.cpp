#include <doctest.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mts/adversaries.hpp"
#include "mts/strategies.hpp"
#include "mts/transport.hpp"
#include "oracles.hpp"

using namespace mts;

namespace {

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

}  // namespace

TEST_CASE("uniform fractional strategy follows the unsaturated set") {
  const MetricSpace m = MetricSpace::uniform(3);
  UniformFractionalStrategy s(m);
  CHECK(s.units() == 6);

  const MassVector fresh = s.step({0.2, 0.0, 0.0});
  CHECK(fresh.raw() == std::vector<Units>{2, 2, 2});

  const MassVector after = s.step({0.8, 0.0, 0.0});  // saturates point 0
  CHECK(after.raw() == std::vector<Units>{0, 3, 3});
  CHECK(s.phase() == 0);

  s.step({0.0, 1.0, 0.0});
  const MassVector reset = s.step({0.0, 0.0, 1.0});  // saturates the last point
  CHECK(reset.raw() == std::vector<Units>{2, 2, 2});
  CHECK(s.phase() == 1);
  CHECK(s.last_step_was_reset());

  CHECK_THROWS_AS(UniformFractionalStrategy(MetricSpace({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})),
                  std::invalid_argument);
}

TEST_CASE("uniform fractional movement per phase stays below the harmonic number") {
  for (int n : {3, 5}) {
    const MetricSpace m = MetricSpace::uniform(n);
    const CostSequence costs = split_at_saturation(phase_adversary(n, 4));
    UniformFractionalStrategy s(m);
    MassVector prev = MassVector::point_mass(n, 0, s.units());
    double phase_movement = 0.0;
    for (const CostVector& c : costs.steps) {
      const MassVector cur = s.step(c);
      if (s.last_step_was_reset()) {
        CHECK(phase_movement <= harmonic(n) + 1e-9);
        phase_movement = 0.0;
      } else {
        phase_movement += ot_cost(m, prev, cur);
      }
      prev = cur;
    }
  }
}

TEST_CASE("per-phase service stays below movement on phase adversaries") {
  for (int n : {2, 3, 5}) {
    const MetricSpace m = MetricSpace::uniform(n);
    const CostSequence costs = split_at_saturation(phase_adversary(n, 4));
    UniformFractionalStrategy s(m);
    MassVector prev = MassVector::point_mass(n, 0, s.units());
    double phase_movement = 0.0, phase_service = 0.0;
    for (const CostVector& c : costs.steps) {
      const MassVector cur = s.step(c);
      if (s.last_step_was_reset()) {
        CHECK(phase_service <= phase_movement + 1e-9);
        phase_movement = 0.0;
        phase_service = 0.0;
      } else {
        phase_movement += ot_cost(m, prev, cur);
        for (int i = 0; i < n; ++i) phase_service += cur.fraction(i) * c[i];
      }
      prev = cur;
    }
  }
}

TEST_CASE("support never regrows inside a phase") {
  const MetricSpace m = MetricSpace::uniform(4);
  const CostSequence costs = split_at_saturation(random_costs(4, 60, 7, 0.6));
  UniformFractionalStrategy s(m);
  std::vector<bool> seen_zero(4, false);
  for (const CostVector& c : costs.steps) {
    const MassVector cur = s.step(c);
    if (s.last_step_was_reset()) {
      std::fill(seen_zero.begin(), seen_zero.end(), false);
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      if (seen_zero[i]) CHECK(cur[i] == 0);
      if (cur[i] == 0) seen_zero[i] = true;
    }
  }
}

TEST_CASE("strategies are causal: prefixes reproduce prefixes") {
  const MetricSpace m = MetricSpace::uniform(3);
  const CostSequence costs = random_costs(3, 12, 3, 0.8);

  UniformFractionalStrategy full(m);
  std::vector<MassVector> outputs;
  for (const CostVector& c : costs.steps) outputs.push_back(full.step(c));

  for (int prefix = 1; prefix <= costs.length(); ++prefix) {
    UniformFractionalStrategy rerun(m);
    for (int t = 0; t < prefix; ++t) {
      const MassVector v = rerun.step(costs.steps[t]);
      CHECK(v == outputs[t]);
    }
  }

  BallsUrnsStrategy balls(m);
  std::vector<MassVector> ball_outputs;
  for (const CostVector& c : costs.steps) ball_outputs.push_back(balls.step(c));
  BallsUrnsStrategy balls_rerun(m);
  for (int t = 0; t < 7; ++t) CHECK(balls_rerun.step(costs.steps[t]) == ball_outputs[t]);
}

TEST_CASE("balls and urns relocates to the least loaded urn") {
  const MetricSpace m = MetricSpace::uniform(3);
  BallsUrnsStrategy s(m);

  const MassVector fresh = s.step({0.2, 0.2, 0.2});
  CHECK(fresh.raw() == std::vector<Units>{1, 1, 1});
  CHECK(s.last_step_relocations() == 0);

  const MassVector moved = s.step({0.8, 0.0, 0.0});  // saturates urn 0
  CHECK(moved.raw() == std::vector<Units>{0, 2, 1});
  CHECK(s.last_step_relocations() == 1);

  s.step({0.0, 1.0, 0.0});  // urn 1 saturated, two balls move to urn 2
  CHECK(s.last_step_relocations() == 2);

  const MassVector reset = s.step({0.0, 0.0, 1.0});
  CHECK(reset.raw() == std::vector<Units>{1, 1, 1});
  CHECK(s.last_step_was_reset());
  CHECK(s.phase() == 1);
}

TEST_CASE("balls and urns phase relocations stay below n(ln n + 3)") {
  const int n = 8;
  const MetricSpace m = MetricSpace::uniform(n);
  const CostSequence costs = split_at_saturation(phase_adversary(n, 3));
  BallsUrnsStrategy s(m);
  long phase_moves = 0;
  for (const CostVector& c : costs.steps) {
    s.step(c);
    if (s.last_step_was_reset()) {
      CHECK(phase_moves <= static_cast<long>(n * (std::log(n) + 3.0)));
      phase_moves = 0;
    } else {
      phase_moves += s.last_step_relocations();
    }
  }
}

TEST_CASE("greedy baseline moves only when it pays") {
  const MetricSpace m = MetricSpace::uniform(2);
  GreedyStrategy s(m, 0);
  CHECK(s.step({0.0, 0.0}) == 0);
  CHECK(s.step({2.0, 0.0}) == 1);
  GreedyStrategy t(m, 0);
  CHECK(t.step({0.5, 0.0}) == 0);
}

TEST_CASE("trace files round trip exactly and reject bad rows") {
  const FractionalTrace trace = random_trace(3, 12, 5, 0, 77);
  const std::string path = "trace_roundtrip.txt";
  save_trace(path, trace);
  const FractionalTrace loaded = load_trace(path, 3);
  CHECK(loaded.initial == trace.initial);
  CHECK(loaded.states == trace.states);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "U 1\n1 0 0\n0 1 0\n0 0 1\n";
  }
  const FractionalTrace points = load_trace(path, 3);
  CHECK(points.units() == 1);
  CHECK(points.length() == 2);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "U 4\n1/2 1/4 1/4\n1/2 1/2 1/4\n";
  }
  CHECK_THROWS(load_trace(path, 3));
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "U 3\n0.5 0.25 0.25\n";
  }
  CHECK_THROWS(load_trace(path, 3));  // not representable in thirds
  std::remove(path.c_str());
}

TEST_CASE("replayed traces recost to the reference total") {
  const MetricSpace m = MetricSpace::uniform(3);
  const CostSequence costs = random_costs(3, 8, 21, 1.0);
  UniformFractionalStrategy s(m);
  const FractionalTrace trace = run_strategy(s, costs, 0);
  const double reference = fractional_cost(m, trace, costs).total;

  const std::string path = "trace_replay.txt";
  save_trace(path, trace);
  const FractionalTrace replayed = load_trace(path, 3);
  CHECK(std::abs(fractional_cost(m, replayed, costs).total - reference) <= 1e-9);
  std::remove(path.c_str());
}

TEST_CASE("random traces are deterministic per seed") {
  const FractionalTrace a = random_trace(4, 16, 10, 1, 5);
  const FractionalTrace b = random_trace(4, 16, 10, 1, 5);
  CHECK(a.initial == b.initial);
  CHECK(a.states == b.states);
  CHECK(a.initial == MassVector::point_mass(4, 1, 16));
}
