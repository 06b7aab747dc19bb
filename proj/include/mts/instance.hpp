#pragma once

#include <string>
#include <vector>

#include "mts/mass.hpp"
#include "mts/metric.hpp"

namespace mts {

// Nonnegative service costs, one entry per point.
using CostVector = std::vector<double>;

struct CostSequence {
  int n = 0;
  std::vector<CostVector> steps;

  int length() const { return static_cast<int>(steps.size()); }

  static CostSequence load(const std::string& path);
  void save(const std::string& path) const;
};

// A deterministic play: occupied point before the game plus one state per step.
struct IntegralTrajectory {
  int initial = 0;
  std::vector<int> states;

  int length() const { return static_cast<int>(states.size()); }
};

// A fractional play: distribution before the game plus one distribution per
// step, all in a common unit.
struct FractionalTrace {
  MassVector initial;
  std::vector<MassVector> states;

  Units units() const { return initial.units(); }
  int length() const { return static_cast<int>(states.size()); }
};

struct CostBreakdown {
  double total = 0.0;
  double movement = 0.0;
  double service = 0.0;
};

// Movement is the sum of distances along the trajectory, service the cost of
// the occupied point after each move.
CostBreakdown trajectory_cost(const MetricSpace& m, const IntegralTrajectory& traj,
                              const CostSequence& costs);

// Movement is the sum of per-step OT costs, service the expectation of each
// cost vector under the post-move distribution.
CostBreakdown fractional_cost(const MetricSpace& m, const FractionalTrace& trace,
                              const CostSequence& costs);

struct OfflineOpt {
  double value = 0.0;
  IntegralTrajectory argmin;
};

// Exact dynamic program over states, started at `initial`; ties resolved
// toward the smallest index.
OfflineOpt offline_opt(const MetricSpace& m, const CostSequence& costs, int initial);

struct FixedCostTotals {
  double variable_total = 0.0;
  double fixed_total = 0.0;
};

// Transaction-cost accounting along a trace: per step, take the integral
// optimal plan; the variable part is the usual OT cost, the fixed part
// charges tau * d(i,j) once per occupied off-diagonal lane.
FixedCostTotals fixed_cost_accounting(const MetricSpace& m, const FractionalTrace& trace,
                                      double tau);

}  // namespace mts
