// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// any failure exits nonzero. Expected runtime: a couple of minutes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mts/adversaries.hpp"
#include "mts/collective.hpp"
#include "mts/discretizer.hpp"
#include "mts/harness.hpp"
#include "mts/strategies.hpp"
#include "mts/transport.hpp"
#include "oracles.hpp"

using namespace mts;

namespace {

int g_failures = 0;

#define REQUIRE_MSG(cond, ...)                                        \
  do {                                                                \
    if (!(cond)) {                                                    \
      std::printf("[FAIL] ");                                         \
      std::printf(__VA_ARGS__);                                       \
      std::printf("  (%s:%d)\n", __FILE__, __LINE__);                 \
      ++g_failures;                                                   \
    }                                                                 \
  } while (0)

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

struct PipelineCase {
  int n = 0;
  MetricSpace metric = MetricSpace::uniform(2);
  CostSequence costs;
  FractionalTrace y_trace;
};

// Mixed y-sources: phase-strategy traces on uniform metrics, random and
// oscillating traces on seeded random metrics.
PipelineCase build_case(int index) {
  const int n = 2 + index % 3;
  const int kind = (index / 3) % 3;
  const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(index);
  const int steps = 50;

  PipelineCase c;
  c.n = n;
  if (kind == 0) {
    c.metric = MetricSpace::uniform(n);
    CostSequence costs = phase_adversary(n, steps / n + 2);
    costs.steps.resize(steps);
    c.costs = split_at_saturation(costs);
    c.costs.steps.resize(steps);
    UniformFractionalStrategy strategy(c.metric);
    c.y_trace = run_strategy(strategy, c.costs, 0);
  } else if (kind == 1) {
    c.metric = MetricSpace::random(n, seed);
    c.costs = random_costs(n, steps, seed + 1, 1.0);
    c.y_trace = random_trace(n, 2 * static_cast<Units>(n) * n * n, steps, 0, seed + 2);
  } else {
    c.metric = MetricSpace::random(n, seed);
    c.costs = random_costs(n, steps, seed + 1, 1.0);
    c.y_trace = oscillating_trace(n, steps, 0, 0, 1);
  }
  return c;
}

// Criteria 1, 4 and 8 share the same 200 discretizer runs.
void criteria_1_4_8() {
  const int runs = 200;
  long steps_checked = 0;
  long dominance_violations = 0;
  long descent_violations = 0;
  long movement_bound_violations = 0;
  long service_bound_violations = 0;
  double worst_descent = 1e300;

  long collective_mismatches = 0;
  long counting_mismatches = 0;

  long fixed_violations = 0;

  for (int i = 0; i < runs; ++i) {
    const PipelineCase c = build_case(i);
    const double tol = 1e-9 * c.metric.diameter();

    DiscretizerConfig cfg;
    cfg.k = static_cast<Units>(c.n) * c.n;
    const DiscretizeResult result = discretize(c.metric, cfg, c.y_trace);

    for (const StepCertificate& cert : result.certificates) {
      ++steps_checked;
      if (!cert.dominance_ok) ++dominance_violations;
      if (cert.descent_slack < -tol) ++descent_violations;
      worst_descent = std::min(worst_descent, cert.descent_slack);
    }
    if (result.movement_bound_slack < 0.0) ++movement_bound_violations;

    const CostBreakdown y_cost = fractional_cost(c.metric, c.y_trace, c.costs);
    const CostBreakdown x_cost = fractional_cost(c.metric, result.x_trace, c.costs);
    if (x_cost.service > 2.0 * y_cost.service + 1e-9 * (1.0 + y_cost.service))
      ++service_bound_violations;
    REQUIRE_MSG(x_cost.total <= 2.0 * y_cost.total + result.initial_potential +
                    c.y_trace.length() * tol + 1e-9 * (1.0 + y_cost.total),
                "criterion 1: end-to-end total above 2*y + P(0) on run %d\n", i);

    REQUIRE_MSG(result.initial_potential <= 2.0 * c.metric.diameter() + 1e-12,
                "criterion 1: P(0)=%g above twice the diameter on run %d\n",
                result.initial_potential, i);
    REQUIRE_MSG(result.initial_potential <= c.metric.diameter() + 1e-12,
                "criterion 1: co-located start should give P(0) <= diameter, run %d\n", i);

    // Criterion 4: collective realization on the same run.
    const CollectiveRun collective = realize_collective(c.metric, result.x_trace, c.costs);
    const double col_tol = 1e-9 * c.metric.diameter() * c.y_trace.length();
    if (std::abs(collective.average.movement - x_cost.movement) > col_tol ||
        std::abs(collective.average.service - x_cost.service) > col_tol)
      ++collective_mismatches;
    for (int t = 0; t < result.x_trace.length(); ++t) {
      std::vector<Units> counts(c.n, 0);
      for (const auto& agent : collective.agents) ++counts[agent.states[t]];
      if (counts != result.x_trace.states[t].raw()) ++counting_mismatches;
    }

    // Criterion 8: fixed transaction costs at tau = 1/n^2 = 1/k.
    const double tau = 1.0 / static_cast<double>(cfg.k);
    const FixedCostTotals fixed = fixed_cost_accounting(c.metric, result.x_trace, tau);
    if (fixed.fixed_total > fixed.variable_total + 1e-9 * (1.0 + fixed.variable_total))
      ++fixed_violations;
  }

  REQUIRE_MSG(dominance_violations == 0, "criterion 1a: %ld dominance violations\n",
              dominance_violations);
  REQUIRE_MSG(descent_violations == 0, "criterion 1b: %ld descent violations\n",
              descent_violations);
  REQUIRE_MSG(movement_bound_violations == 0, "criterion 1c: %ld movement-bound violations\n",
              movement_bound_violations);
  REQUIRE_MSG(service_bound_violations == 0, "criterion 1c: %ld service-bound violations\n",
              service_bound_violations);
  if (dominance_violations + descent_violations + movement_bound_violations +
          service_bound_violations ==
      0)
    std::printf(
        "[PASS] criterion 1: discretizer certificates on %d runs, %ld steps "
        "(worst descent slack %.3g)\n",
        runs, steps_checked, worst_descent);

  REQUIRE_MSG(collective_mismatches == 0, "criterion 4: %ld average-cost mismatches\n",
              collective_mismatches);
  REQUIRE_MSG(counting_mismatches == 0, "criterion 4: %ld counting-vector mismatches\n",
              counting_mismatches);
  if (collective_mismatches + counting_mismatches == 0)
    std::printf("[PASS] criterion 4: collective equivalence exact on all %d runs\n", runs);

  REQUIRE_MSG(fixed_violations == 0, "criterion 8: %ld fixed > variable runs\n",
              fixed_violations);
  if (fixed_violations == 0)
    std::printf("[PASS] criterion 8: fixed transaction costs bounded by variable on %d runs\n",
                runs);
}

void criterion_2() {
  long steps_checked = 0;
  double worst_uniform = 1e300;
  double worst_random = 1e300;

  for (const int n : {2, 3}) {
    DiscretizerConfig cfg;
    cfg.k = static_cast<Units>(n) * n;
    const int steps = 20;

    // Uniform metric: exact integer numerators, strict positivity required.
    {
      const MetricSpace m = MetricSpace::uniform(n);
      const FractionalTrace y = random_trace(n, 2 * static_cast<Units>(n) * cfg.k, steps, 0,
                                             500 + static_cast<std::uint64_t>(n));
      const DiscretizeResult result = discretize(m, cfg, y);
      for (int t = 0; t < steps; ++t) {
        const double slack =
            verify_necessary_condition(m, cfg, result.x_trace.states[t], y.states[t]);
        worst_uniform = std::min(worst_uniform, slack);
        ++steps_checked;
      }
    }
    // Random metric: positivity up to the floating tolerance.
    {
      const MetricSpace m = MetricSpace::random(n, 600 + static_cast<std::uint64_t>(n));
      const FractionalTrace y = oscillating_trace(n, steps, 0, 0, n - 1);
      const DiscretizeResult result = discretize(m, cfg, y);
      for (int t = 0; t < steps; ++t) {
        const double slack =
            verify_necessary_condition(m, cfg, result.x_trace.states[t], y.states[t]);
        worst_random = std::min(worst_random, slack - (-1e-9 * m.diameter()));
        ++steps_checked;
      }
    }
  }
  REQUIRE_MSG(worst_uniform > 0.0, "criterion 2: non-strict slack %.3g on a uniform metric\n",
              worst_uniform);
  REQUIRE_MSG(worst_random > 0.0, "criterion 2: slack below -1e-9*diameter on a random metric\n");
  if (worst_uniform > 0.0 && worst_random > 0.0)
    std::printf(
        "[PASS] criterion 2: necessary condition strict over %ld full P_k scans "
        "(min uniform slack %.3g)\n",
        steps_checked, worst_uniform);
}

void criterion_3() {
  const int baseline_failures = g_failures;
  Rng rng(77);
  long drain_checked = 0;
  double worst_gap = 0.0;
  while (drain_checked < 1000) {
    const int n = 2 + static_cast<int>(rng.next_int(0, 3));  // up to 5 points
    const Units units = rng.next_int(3 * n, 60);
    const MetricSpace m = MetricSpace::random(n, rng.next_u64());
    const MassVector y = oracle::random_mass(n, units, rng);
    MassVector z = oracle::random_mass(n, units, rng);
    const Units alpha = rng.next_int(1, 2);
    const int source = static_cast<int>(rng.next_int(0, n - 1));

    // Force the hypothesis z[source] >= y[source] + n*alpha by shifting mass.
    std::vector<Units> mass = z.raw();
    Units need = y[source] + static_cast<Units>(n) * alpha - mass[source];
    for (int i = 0; i < n && need > 0; ++i) {
      if (i == source) continue;
      const Units take = std::min(mass[i], need);
      mass[i] -= take;
      mass[source] += take;
      need -= take;
    }
    if (need > 0) continue;
    z = MassVector(units, std::move(mass));

    const DrainResult result = drain_step(m, z, y, source, alpha);
    const double lhs = ot_cost(m, z, y);
    const double rhs = static_cast<double>(alpha) / static_cast<double>(units) *
                           m.distance(source, result.target) +
                       ot_cost(m, result.shifted, y);
    const double gap = std::abs(lhs - rhs);
    worst_gap = std::max(worst_gap, gap);
    REQUIRE_MSG(gap <= 1e-9 * m.diameter(), "criterion 3: drain decomposition gap %.3g\n", gap);
    ++drain_checked;
  }

  long ot_checked = 0;
  Rng rng2(78);
  while (ot_checked < 200) {
    const int n = 2 + static_cast<int>(rng2.next_int(0, 2));
    const Units units = rng2.next_int(2, 8);
    const MetricSpace m = oracle::random_dyadic_metric(n, rng2);
    const MassVector a = oracle::random_mass(n, units, rng2);
    const MassVector b = oracle::random_mass(n, units, rng2);
    const double solved = ot_cost(m, a, b);
    const double brute = oracle::brute_force_ot_cost(m, a, b);
    REQUIRE_MSG(solved == brute, "criterion 3: ot %.17g != brute force %.17g\n", solved, brute);
    ++ot_checked;
  }
  if (g_failures == baseline_failures)
    std::printf(
        "[PASS] criterion 3: drain decomposition on %ld instances (worst gap %.3g), "
        "%ld exact brute-force transports\n",
        drain_checked, worst_gap, ot_checked);
}

void criterion_5() {
  bool ok = true;
  for (const int n : {3, 5, 8}) {
    const MetricSpace m = MetricSpace::uniform(n);
    const CostSequence costs = split_at_saturation(phase_adversary(n, 10));
    const double h = harmonic(n);

    // Uniform fractional strategy: per-phase movement and total bounds,
    // excluding the documented reset step.
    {
      UniformFractionalStrategy s(m);
      MassVector prev = MassVector::point_mass(n, 0, s.units());
      double phase_movement = 0.0, phase_total = 0.0;
      for (const CostVector& c : costs.steps) {
        const MassVector cur = s.step(c);
        if (s.last_step_was_reset()) {
          REQUIRE_MSG(phase_movement <= h + 1e-9,
                      "criterion 5: phase movement %.6f > H_%d = %.6f\n", phase_movement, n, h);
          REQUIRE_MSG(phase_total <= 2.0 * h + 1e-9,
                      "criterion 5: phase total %.6f > 2 H_%d\n", phase_total, n);
          ok = ok && phase_movement <= h + 1e-9 && phase_total <= 2.0 * h + 1e-9;
          phase_movement = 0.0;
          phase_total = 0.0;
        } else {
          const double move = ot_cost(m, prev, cur);
          double service = 0.0;
          for (int i = 0; i < n; ++i) service += cur.fraction(i) * c[i];
          phase_movement += move;
          phase_total += move + service;
        }
        prev = cur;
      }
    }

    // Balls and urns: per-phase relocations and the overall guarantee.
    {
      BallsUrnsStrategy s(m);
      const long reloc_bound = static_cast<long>(n * (std::log(n) + 3.0));
      long phase_relocations = 0;
      for (const CostVector& c : costs.steps) {
        s.step(c);
        if (s.last_step_was_reset()) {
          REQUIRE_MSG(phase_relocations <= reloc_bound,
                      "criterion 5: %ld relocations > n(ln n + 3) for n=%d\n", phase_relocations,
                      n);
          ok = ok && phase_relocations <= reloc_bound;
          phase_relocations = 0;
        } else {
          phase_relocations += s.last_step_relocations();
        }
      }

      BallsUrnsStrategy fresh(m);
      const FractionalTrace trace = run_strategy(fresh, costs, 0);
      const double total = fractional_cost(m, trace, costs).total;
      const double opt = offline_opt(m, costs, 0).value;
      REQUIRE_MSG(std::abs(opt - 10.0) <= 1e-9, "criterion 5: OPT %.6f != phase count\n", opt);
      const double bound = (2.0 * h + 6.0) * opt + m.diameter();
      REQUIRE_MSG(total <= bound, "criterion 5: balls/urns total %.6f > (2H_n+6) OPT + beta\n",
                  total);
      ok = ok && total <= bound;
    }
  }
  if (ok)
    std::printf("[PASS] criterion 5: uniform-metric phase bounds hold for n in {3,5,8}\n");
}

void criterion_6() {
  const int baseline_failures = g_failures;
  Rng rng(99);
  long checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_int(0, 1));
    const int steps = static_cast<int>(rng.next_int(1, 6));
    const MetricSpace m = MetricSpace::random(n, rng.next_u64());
    const CostSequence costs = random_costs(n, steps, rng.next_u64(), 2.0);
    const int initial = static_cast<int>(rng.next_int(0, n - 1));
    const double dp = offline_opt(m, costs, initial).value;
    const double brute = oracle::enumerate_opt(m, costs, initial);
    REQUIRE_MSG(dp == brute, "criterion 6: DP %.17g != enumeration %.17g\n", dp, brute);
    ++checked;
  }
  if (g_failures == baseline_failures)
    std::printf("[PASS] criterion 6: offline optimum exact against %ld enumerations\n", checked);
}

void criterion_7() {
  double previous_ratio = 0.0;
  bool ok = true;
  std::string summary;
  for (const int n : {2, 3, 4}) {
    const MetricSpace m = MetricSpace::uniform(n);
    GreedyStrategy victim(m, 0);
    const CostSequence costs = cruel_adversary(m, victim, 200, 1.0);

    GreedyStrategy replay(m, 0);
    IntegralTrajectory traj{0, {}};
    for (const CostVector& c : costs.steps) traj.states.push_back(replay.step(c));
    const double alg_cost = trajectory_cost(m, traj, costs).total;
    const double opt = offline_opt(m, costs, 0).value;
    const double ratio = (alg_cost - m.diameter()) / opt;

    REQUIRE_MSG(ratio >= static_cast<double>(n) / 2.0,
                "criterion 7: adjusted ratio %.3f below n/2 for n=%d\n", ratio, n);
    REQUIRE_MSG(ratio >= previous_ratio - 1e-9,
                "criterion 7: adjusted ratio decreased from %.3f to %.3f at n=%d\n",
                previous_ratio, ratio, n);
    ok = ok && ratio >= static_cast<double>(n) / 2.0 && ratio >= previous_ratio - 1e-9;
    previous_ratio = ratio;
    summary += (summary.empty() ? "" : ", ") + std::to_string(n) + ":" + std::to_string(ratio);
  }
  if (ok)
    std::printf("[PASS] criterion 7: cruel-adversary pressure nondecreasing (%s)\n",
                summary.c_str());
}

void criterion_9() {
  RunConfig config;
  config.metric_spec = "uniform:3";
  config.cost_spec = "phase:3:4";
  config.strategy_spec = "uniform_fractional";
  config.k = 9;
  config.verify_nc = "on";
  config.trace_path = "acceptance_trace_a.txt";
  config.report_path = "acceptance_report_a.txt";
  run(config);
  config.trace_path = "acceptance_trace_b.txt";
  config.report_path = "acceptance_report_b.txt";
  run(config);

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };
  const bool traces_equal = slurp("acceptance_trace_a.txt") == slurp("acceptance_trace_b.txt");
  const bool reports_equal = slurp("acceptance_report_a.txt") == slurp("acceptance_report_b.txt");
  REQUIRE_MSG(traces_equal, "criterion 9: trace files differ between identical runs\n");
  REQUIRE_MSG(reports_equal, "criterion 9: report files differ between identical runs\n");
  if (traces_equal && reports_equal)
    std::printf("[PASS] criterion 9: repeated runs are byte-identical\n");
  for (const char* f : {"acceptance_trace_a.txt", "acceptance_trace_b.txt",
                        "acceptance_report_a.txt", "acceptance_report_b.txt"})
    std::remove(f);
}

}  // namespace

int main() {
  criteria_1_4_8();
  criterion_2();
  criterion_3();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_9();
  if (g_failures != 0) {
    std::printf("[FAIL] acceptance: %d failure(s)\n", g_failures);
    return 1;
  }
  std::printf("[PASS] acceptance: all criteria satisfied\n");
  return 0;
}
