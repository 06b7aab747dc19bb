#pragma once

#include <cstdint>

#include "mts/instance.hpp"
#include "mts/strategies.hpp"

namespace mts {

enum class PhasePattern {
  // Phase r starts its delivery at point (r mod n) and wraps around.
  kRoundRobin,
  // Every phase delivers in index order, so the last point always saturates last.
  kWorstLast,
};

// Uniform-metric phase sequence: each phase puts unit cost on the points one
// at a time until all are saturated, so the offline optimum equals the phase
// count.
CostSequence phase_adversary(int n, int phases, PhasePattern pattern = PhasePattern::kRoundRobin);

// Co-simulates a deterministic strategy and places `magnitude` on its current
// (pre-move) state at every step.
CostSequence cruel_adversary(const MetricSpace& m, DeterministicStrategy& algorithm, int steps,
                             double magnitude = 1.0);

// Splits any vector that overshoots a point's saturation into consecutive
// vectors with exact saturation at the boundary; per-point totals are
// preserved exactly. Phase accounting starts from a fresh ledger.
CostSequence split_at_saturation(const CostSequence& costs);

// I.i.d. uniform entries in [0, scale), deterministic per seed.
CostSequence random_costs(int n, int steps, std::uint64_t seed, double scale = 1.0);

}  // namespace mts
