#include "mts/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mts/rng.hpp"

namespace mts {

CostSequence phase_adversary(int n, int phases, PhasePattern pattern) {
  if (n < 1 || phases < 0) throw std::invalid_argument("phase_adversary: bad parameters");
  CostSequence seq;
  seq.n = n;
  for (int r = 0; r < phases; ++r) {
    const int start = pattern == PhasePattern::kRoundRobin ? r % n : 0;
    for (int i = 0; i < n; ++i) {
      CostVector c(n, 0.0);
      c[(start + i) % n] = 1.0;
      seq.steps.push_back(std::move(c));
    }
  }
  return seq;
}

CostSequence cruel_adversary(const MetricSpace& m, DeterministicStrategy& algorithm, int steps,
                             double magnitude) {
  if (steps < 0 || magnitude < 0.0) throw std::invalid_argument("cruel_adversary: bad parameters");
  CostSequence seq;
  seq.n = m.size();
  for (int t = 0; t < steps; ++t) {
    CostVector c(m.size(), 0.0);
    c[algorithm.position()] = magnitude;
    algorithm.step(c);
    seq.steps.push_back(std::move(c));
  }
  return seq;
}

CostSequence split_at_saturation(const CostSequence& costs) {
  CostSequence out;
  out.n = costs.n;
  PhaseLedger ledger(costs.n);
  for (const CostVector& original : costs.steps) {
    CostVector rest = original;
    for (;;) {
      // Smallest scale at which some unsaturated point overshoots saturation.
      double theta = 1.0;
      int crossing = -1;
      for (int i = 0; i < costs.n; ++i) {
        if (ledger.saturated(i) || rest[i] <= 0.0) continue;
        const double need = (1.0 - ledger.accumulated(i)) / rest[i];
        if (need < theta) {
          theta = need;
          crossing = i;
        }
      }
      CostVector part;
      if (crossing < 0) {
        part = rest;
        std::fill(rest.begin(), rest.end(), 0.0);
      } else {
        part.assign(costs.n, 0.0);
        for (int i = 0; i < costs.n; ++i) part[i] = theta * rest[i];
        part[crossing] = 1.0 - ledger.accumulated(crossing);  // exact boundary
        for (int i = 0; i < costs.n; ++i) rest[i] = std::max(0.0, rest[i] - part[i]);
      }
      ledger.accrue(part);
      out.steps.push_back(std::move(part));
      if (ledger.all_saturated()) ledger.advance_phase();
      bool any = false;
      for (double v : rest) any = any || v > 0.0;
      if (!any) break;
    }
  }
  return out;
}

CostSequence random_costs(int n, int steps, std::uint64_t seed, double scale) {
  if (n < 1 || steps < 0 || scale < 0.0) throw std::invalid_argument("random_costs: bad parameters");
  Rng rng(seed);
  CostSequence seq;
  seq.n = n;
  for (int t = 0; t < steps; ++t) {
    CostVector c(n);
    for (int i = 0; i < n; ++i) c[i] = scale * rng.next_double();
    seq.steps.push_back(std::move(c));
  }
  return seq;
}

}  // namespace mts
