#include "mts/collective.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mts/rng.hpp"
#include "mts/transport.hpp"

namespace mts {

std::vector<Units> AgentAssignment::counts(int n) const {
  std::vector<Units> out(n, 0);
  for (int p : positions) {
    if (p < 0 || p >= n) throw std::invalid_argument("agent position out of range");
    ++out[p];
  }
  return out;
}

AgentAssignment initial_assignment(const MassVector& x0) {
  AgentAssignment a;
  a.positions.reserve(static_cast<std::size_t>(x0.units()));
  for (int point = 0; point < x0.size(); ++point)
    for (Units c = 0; c < x0[point]; ++c) a.positions.push_back(point);
  return a;
}

ReassignResult reassign(const MetricSpace& m, const AgentAssignment& a,
                        const MassVector& x_prev, const MassVector& x_next) {
  const int n = m.size();
  if (a.counts(n) != x_prev.raw())
    throw std::invalid_argument("reassign: assignment does not realize x_prev");
  if (x_prev.units() != x_next.units())
    throw std::invalid_argument("reassign: configurations use different units");

  const Coupling plan = ot(m, x_prev, x_next).plan;

  std::vector<std::vector<int>> at_point(n);
  for (int agent = 0; agent < a.agent_count(); ++agent)
    at_point[a.positions[agent]].push_back(agent);  // ascending agent ids

  ReassignResult result;
  result.next = a;
  for (int from = 0; from < n; ++from) {
    // Lowest-numbered agents depart first; destinations fill in increasing
    // point order. The integral plan guarantees no agent is ever split.
    std::size_t cursor = 0;
    for (int to = 0; to < n; ++to) {
      if (to == from) continue;
      for (Units f = 0; f < plan.flow[from][to]; ++f) {
        const int agent = at_point[from][cursor++];
        result.next.positions[agent] = to;
        result.moves.push_back(AgentMove{agent, from, to});
      }
    }
  }
  return result;
}

CollectiveRun realize_collective(const MetricSpace& m, const FractionalTrace& x_trace,
                                 const CostSequence& costs) {
  if (x_trace.length() != costs.length())
    throw std::invalid_argument("realize_collective: trace/cost length mismatch");
  const int k = static_cast<int>(x_trace.units());

  CollectiveRun run;
  AgentAssignment a = initial_assignment(x_trace.initial);
  run.agents.assign(k, IntegralTrajectory{});
  for (int agent = 0; agent < k; ++agent) run.agents[agent].initial = a.positions[agent];

  const MassVector* prev = &x_trace.initial;
  for (int t = 0; t < x_trace.length(); ++t) {
    a = reassign(m, a, *prev, x_trace.states[t]).next;
    for (int agent = 0; agent < k; ++agent) run.agents[agent].states.push_back(a.positions[agent]);
    prev = &x_trace.states[t];
  }

  run.per_agent.reserve(k);
  for (int agent = 0; agent < k; ++agent) {
    run.per_agent.push_back(trajectory_cost(m, run.agents[agent], costs));
    run.average.movement += run.per_agent.back().movement;
    run.average.service += run.per_agent.back().service;
  }
  run.average.movement /= static_cast<double>(k);
  run.average.service /= static_cast<double>(k);
  run.average.total = run.average.movement + run.average.service;
  return run;
}

IntegralTrajectory sample_branch(const CollectiveRun& run, std::uint64_t seed) {
  if (run.agents.empty()) throw std::invalid_argument("sample_branch: empty run");
  Rng rng(seed);
  return run.agents[rng.next_int(0, static_cast<std::int64_t>(run.agents.size()) - 1)];
}

void save_collective(const std::string& path, const MetricSpace& m, const CollectiveRun& run,
                     const CostSequence& costs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write collective file: " + path);
  out.precision(17);
  const int k = static_cast<int>(run.agents.size());
  const int steps = k == 0 ? 0 : run.agents.front().length();
  out << "agents " << k << " steps " << steps << "\n";

  std::vector<double> cumulative(k, 0.0);
  std::vector<int> prev(k);
  for (int agent = 0; agent < k; ++agent) prev[agent] = run.agents[agent].initial;
  out << "t 0 positions";
  for (int agent = 0; agent < k; ++agent) out << " " << prev[agent];
  out << "\n";
  for (int t = 0; t < steps; ++t) {
    out << "t " << (t + 1) << " positions";
    for (int agent = 0; agent < k; ++agent) out << " " << run.agents[agent].states[t];
    out << " cumulative";
    for (int agent = 0; agent < k; ++agent) {
      const int cur = run.agents[agent].states[t];
      cumulative[agent] += m.distance(prev[agent], cur) + costs.steps[t][cur];
      prev[agent] = cur;
      out << " " << cumulative[agent];
    }
    out << "\n";
  }
}

}  // namespace mts
