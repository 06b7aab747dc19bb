#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mts/instance.hpp"
#include "mts/mass.hpp"
#include "mts/metric.hpp"

namespace mts {

// Per-phase saturation bookkeeping for uniform-metric strategies. A point is
// saturated once its accumulated cost in the current phase reaches 1 (up to
// 1e-9); the phase advances exactly when every point is saturated.
class PhaseLedger {
 public:
  explicit PhaseLedger(int n) : accumulated_(n, 0.0) {}

  void accrue(const CostVector& c);
  bool saturated(int i) const { return accumulated_[i] >= 1.0 - kSaturationTol; }
  bool all_saturated() const;
  std::vector<int> unsaturated() const;
  void advance_phase();

  int phase() const { return phase_; }
  double accumulated(int i) const { return accumulated_[i]; }

  static constexpr double kSaturationTol = 1e-9;

 private:
  int phase_ = 0;
  std::vector<double> accumulated_;
};

// Online source of distributions: the state at step t may depend only on the
// costs received up to t.
class FractionalStrategy {
 public:
  virtual ~FractionalStrategy() = default;
  virtual Units units() const = 0;
  virtual MassVector step(const CostVector& c) = 0;

  // Phase-aware strategies override these; others run in a single phase.
  virtual int phase() const { return 0; }
  virtual bool last_step_was_reset() const { return false; }
};

// The uniform-metric phase strategy: uniform distribution over the points not
// yet saturated in the current phase; on phase completion the ledger resets
// and the distribution returns to uniform over all points. Distributions are
// emitted in units of lcm(1..n) so every subset size divides evenly.
class UniformFractionalStrategy : public FractionalStrategy {
 public:
  explicit UniformFractionalStrategy(const MetricSpace& m);

  Units units() const override { return units_; }
  MassVector step(const CostVector& c) override;
  int phase() const override { return ledger_.phase(); }
  bool last_step_was_reset() const override { return last_reset_; }
  const PhaseLedger& ledger() const { return ledger_; }

 private:
  int n_;
  Units units_;
  PhaseLedger ledger_;
  bool last_reset_ = false;
};

// The balls-and-urns discretization: n balls of mass 1/n across n urns. While
// a saturated urn holds a ball, one ball at a time is relocated to the least
// loaded unsaturated urn (ties toward the smallest index). On phase
// completion the balls return to one per urn.
class BallsUrnsStrategy : public FractionalStrategy {
 public:
  explicit BallsUrnsStrategy(const MetricSpace& m);

  Units units() const override { return n_; }
  MassVector step(const CostVector& c) override;
  int phase() const override { return ledger_.phase(); }
  bool last_step_was_reset() const override { return last_reset_; }

  long last_step_relocations() const { return last_relocations_; }
  long total_relocations() const { return total_relocations_; }

 private:
  int n_;
  std::vector<Units> balls_;
  PhaseLedger ledger_;
  bool last_reset_ = false;
  long last_relocations_ = 0;
  long total_relocations_ = 0;
};

// Online source of single states, used by adversary co-simulation.
class DeterministicStrategy {
 public:
  virtual ~DeterministicStrategy() = default;
  virtual int position() const = 0;
  virtual int step(const CostVector& c) = 0;
};

// Baseline: move to the point minimizing d(current, p) + c_p, ties toward the
// smallest index (staying costs d = 0).
class GreedyStrategy : public DeterministicStrategy {
 public:
  GreedyStrategy(const MetricSpace& m, int initial);

  int position() const override { return position_; }
  int step(const CostVector& c) override;

 private:
  const MetricSpace* metric_;
  int position_;
};

// Wraps a deterministic strategy as a point-mass fractional strategy (U = 1).
class PointMassStrategy : public FractionalStrategy {
 public:
  PointMassStrategy(std::unique_ptr<DeterministicStrategy> inner, int n)
      : inner_(std::move(inner)), n_(n) {}

  Units units() const override { return 1; }
  MassVector step(const CostVector& c) override {
    return MassVector::point_mass(n_, inner_->step(c));
  }

 private:
  std::unique_ptr<DeterministicStrategy> inner_;
  int n_;
};

// Trace files: header "U <units>", then one line per distribution with n
// entries, each "p/q" (exact) or a real; every line must sum to one whole.
// The first line after the header is the initial distribution.
FractionalTrace load_trace(const std::string& path, int n);
void save_trace(const std::string& path, const FractionalTrace& trace);

// Trace builders used by experiments and fuzz suites.
FractionalTrace random_trace(int n, Units units, int steps, int initial, std::uint64_t seed);
FractionalTrace oscillating_trace(int n, int steps, int initial, int a, int b);

// Runs a fractional strategy over a cost sequence, starting from the point
// mass at `initial` rescaled to the strategy's units.
FractionalTrace run_strategy(FractionalStrategy& strategy, const CostSequence& costs,
                             int initial);

}  // namespace mts
