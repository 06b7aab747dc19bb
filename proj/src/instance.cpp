#include "mts/instance.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mts/transport.hpp"

namespace mts {

namespace {

void check_lengths(int have, int want, const char* what) {
  if (have != want) {
    std::ostringstream os;
    os << what << ": trajectory/trace has " << have << " steps but cost sequence has " << want;
    throw std::invalid_argument(os.str());
  }
}

void check_cost_vector(const CostVector& c, int n) {
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("cost vector length does not match point count");
  for (double v : c)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("cost vectors must be nonnegative and finite");
}

}  // namespace

CostSequence CostSequence::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cost file: " + path);
  CostSequence seq;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    CostVector c;
    double v = 0.0;
    while (row >> v) c.push_back(v);
    if (c.empty()) continue;
    if (seq.n == 0) seq.n = static_cast<int>(c.size());
    check_cost_vector(c, seq.n);
    seq.steps.push_back(std::move(c));
  }
  if (seq.n == 0) throw std::runtime_error("empty cost file: " + path);
  return seq;
}

void CostSequence::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cost file: " + path);
  out.precision(17);
  for (const auto& c : steps) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << "\n";
  }
}

CostBreakdown trajectory_cost(const MetricSpace& m, const IntegralTrajectory& traj,
                              const CostSequence& costs) {
  check_lengths(traj.length(), costs.length(), "trajectory_cost");
  CostBreakdown out;
  int prev = traj.initial;
  for (int t = 0; t < traj.length(); ++t) {
    const int cur = traj.states[t];
    check_cost_vector(costs.steps[t], m.size());
    out.movement += m.distance(prev, cur);
    out.service += costs.steps[t][cur];
    prev = cur;
  }
  out.total = out.movement + out.service;
  return out;
}

CostBreakdown fractional_cost(const MetricSpace& m, const FractionalTrace& trace,
                              const CostSequence& costs) {
  check_lengths(trace.length(), costs.length(), "fractional_cost");
  CostBreakdown out;
  const MassVector* prev = &trace.initial;
  for (int t = 0; t < trace.length(); ++t) {
    const MassVector& cur = trace.states[t];
    check_cost_vector(costs.steps[t], m.size());
    out.movement += ot_cost(m, *prev, cur);
    double service = 0.0;
    for (int i = 0; i < m.size(); ++i) service += cur.fraction(i) * costs.steps[t][i];
    out.service += service;
    prev = &cur;
  }
  out.total = out.movement + out.service;
  return out;
}

OfflineOpt offline_opt(const MetricSpace& m, const CostSequence& costs, int initial) {
  const int n = m.size();
  if (initial < 0 || initial >= n) throw std::invalid_argument("offline_opt: bad initial point");
  const int steps = costs.length();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> value(n, kInf);
  value[initial] = 0.0;
  std::vector<std::vector<int>> choice(steps, std::vector<int>(n, -1));

  for (int t = 0; t < steps; ++t) {
    check_cost_vector(costs.steps[t], n);
    std::vector<double> next(n, kInf);
    for (int cur = 0; cur < n; ++cur) {
      double best = kInf;
      int best_prev = -1;
      for (int prev = 0; prev < n; ++prev) {
        if (value[prev] == kInf) continue;
        const double cand = value[prev] + m.distance(prev, cur);
        if (cand < best) {
          best = cand;
          best_prev = prev;
        }
      }
      if (best_prev >= 0) {
        next[cur] = best + costs.steps[t][cur];
        choice[t][cur] = best_prev;
      }
    }
    value = std::move(next);
  }

  OfflineOpt out;
  out.argmin.initial = initial;
  int end = 0;
  for (int i = 1; i < n; ++i)
    if (value[i] < value[end]) end = i;
  out.value = steps == 0 ? 0.0 : value[end];
  out.argmin.states.assign(steps, 0);
  for (int t = steps - 1; t >= 0; --t) {
    out.argmin.states[t] = end;
    end = choice[t][end];
  }
  return out;
}

FixedCostTotals fixed_cost_accounting(const MetricSpace& m, const FractionalTrace& trace,
                                      double tau) {
  if (tau < 0.0) throw std::invalid_argument("fixed_cost_accounting: tau must be nonnegative");
  FixedCostTotals out;
  const MassVector* prev = &trace.initial;
  for (const MassVector& cur : trace.states) {
    const Coupling plan = ot(m, *prev, cur).plan;
    out.variable_total += plan.cost(m);
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j)
        if (i != j && plan.flow[i][j] > 0) out.fixed_total += tau * m.distance(i, j);
    prev = &cur;
  }
  return out;
}

}  // namespace mts
