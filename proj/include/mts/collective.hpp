#pragma once

#include <cstdint>
#include <vector>

#include "mts/instance.hpp"
#include "mts/mass.hpp"
#include "mts/metric.hpp"

namespace mts {

// Positions of k coordinated agents; the induced counting vector divided by k
// is a configuration in P_k.
struct AgentAssignment {
  std::vector<int> positions;

  int agent_count() const { return static_cast<int>(positions.size()); }
  std::vector<Units> counts(int n) const;
};

// Canonical deployment of x0 (units = k): agents in increasing id order fill
// points in increasing index order.
AgentAssignment initial_assignment(const MassVector& x0);

struct AgentMove {
  int agent = 0;
  int from = 0;
  int to = 0;
};

struct ReassignResult {
  AgentAssignment next;
  std::vector<AgentMove> moves;
};

// Redistributes agents from x_prev to x_next along the integral optimal plan,
// without splitting any agent. At each point the lowest-numbered agents
// depart first and destinations fill in increasing point order, so the result
// is reproducible. Total distance moved equals k * OT(x_prev, x_next).
ReassignResult reassign(const MetricSpace& m, const AgentAssignment& a,
                        const MassVector& x_prev, const MassVector& x_next);

struct CollectiveRun {
  std::vector<IntegralTrajectory> agents;
  std::vector<CostBreakdown> per_agent;
  CostBreakdown average;  // (1/k) * sum over agents
};

// Realizes a k-barely-fractional trace as k deterministic trajectories whose
// average cost reproduces the fractional cost of the trace.
CollectiveRun realize_collective(const MetricSpace& m, const FractionalTrace& x_trace,
                                 const CostSequence& costs);

// The barely random view: follow one uniformly drawn member of the team.
IntegralTrajectory sample_branch(const CollectiveRun& run, std::uint64_t seed);

void save_collective(const std::string& path, const MetricSpace& m,
                     const CollectiveRun& run, const CostSequence& costs);

}  // namespace mts
