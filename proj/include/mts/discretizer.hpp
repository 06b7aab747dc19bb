#pragma once

#include <optional>
#include <vector>

#include "mts/instance.hpp"
#include "mts/mass.hpp"
#include "mts/metric.hpp"

namespace mts {

struct DiscretizerConfig {
  Units k = 1;
  // Guards the regime the movement/service guarantees are proved for; turn
  // off to probe smaller k (certificates are still evaluated and may fail).
  bool require_k_ge_n2 = true;
  // Upper bound on |P_k| for the exact exhaustive argmin.
  Units enumeration_cap = 1'000'000;
  // Fall back to non-certified first-improvement local search when the cap
  // is exceeded.
  bool allow_local_search = false;
};

// Everything the per-step proof inequalities talk about, recomputable from
// (x_prev, y_prev, y_new, x_new) alone.
struct StepCertificate {
  int t = 0;
  MassVector x_prev;
  MassVector x_new;
  MassVector y_new;
  double objective = 0.0;         // D(x_new, y_new) + OT(x_prev, x_new)
  double potential_before = 0.0;  // D(x_prev, y_prev)
  double potential_after = 0.0;   // D(x_new, y_new)
  double movement = 0.0;          // OT(x_prev, x_new)
  bool dominance_ok = false;      // forall p: x_new(p) <= 2 * y_new(p), exact
  double descent_slack = 0.0;     // rhs - lhs of the potential-descent bound
};

// All configurations in P_k over n points, in increasing lexicographic order.
std::vector<std::vector<Units>> enumerate_configurations(int n, Units k);

// |P_k| = C(k+n-1, n-1), saturating to +inf on overflow.
double configuration_count(int n, Units k);

// The potential D(x, y) = 2 * OT(x/2 + 1/(2n) * ones, y), evaluated exactly
// on the common grid lcm(2*n*k, y.units()) where k = x.units().
double potential(const MetricSpace& m, const MassVector& x, const MassVector& y);

// One step of the discretizer: the exact argmin over P_k of
// D(x, y_t) + OT(x_prev, x), ties broken toward maximal OT(x_prev, x), then
// toward the lexicographically smallest configuration.
MassVector select(const MetricSpace& m, const DiscretizerConfig& cfg,
                  const MassVector& x_prev, const MassVector& y_t);

// Initialization: argmin over P_k of D(x, y0) with lexicographic ties; equals
// k * e_p whenever y0 is the point mass at p.
MassVector select_initial(const MetricSpace& m, const DiscretizerConfig& cfg,
                          const MassVector& y0);

// Worst slack of the strict necessary condition: min over x' != x_t of
// D(x', y_t) + OT(x_t, x') - D(x_t, y_t). Positive whenever x_t was produced
// by select with exact arithmetic.
double verify_necessary_condition(const MetricSpace& m, const DiscretizerConfig& cfg,
                                  const MassVector& x_t, const MassVector& y_t);

StepCertificate make_certificate(const MetricSpace& m, int t, const MassVector& x_prev,
                                 const MassVector& y_prev, const MassVector& y_new,
                                 const MassVector& x_new);

struct DiscretizeResult {
  FractionalTrace x_trace;  // units = k
  std::vector<StepCertificate> certificates;
  double initial_potential = 0.0;  // P(0)
  double movement_x = 0.0;
  double movement_y = 0.0;
  bool all_dominance_ok = true;
  double worst_descent_slack = 0.0;
  // (P(0) + 2*Mvt(y) + T*tol) - Mvt(x); nonnegative when the telescoping
  // movement bound holds.
  double movement_bound_slack = 0.0;
};

// Runs select over a whole fractional trace and evaluates every certificate.
DiscretizeResult discretize(const MetricSpace& m, const DiscretizerConfig& cfg,
                            const FractionalTrace& y_trace);

}  // namespace mts
