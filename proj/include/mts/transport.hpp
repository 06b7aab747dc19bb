#pragma once

#include "mts/mass.hpp"
#include "mts/metric.hpp"

namespace mts {

// An integral transport plan between two mass vectors in a shared unit.
// Row sums reproduce the source masses, column sums the target masses.
struct Coupling {
  Units units = 1;
  std::vector<std::vector<Units>> flow;

  // Sum of flow(i,j) * d(i,j) over all lanes; exact in doubles whenever the
  // distances are integers or dyadics.
  double numerator(const MetricSpace& m) const;
  double cost(const MetricSpace& m) const { return numerator(m) / static_cast<double>(units); }

  std::vector<Units> row_sums() const;
  std::vector<Units> col_sums() const;
};

struct TransportResult {
  double cost = 0.0;
  Coupling plan;
};

// Exact discrete optimal transport between a and b (same size, same units).
// Solved as min-cost flow on the surplus/deficit bipartite network with
// integer supplies, so the returned plan is always integral in 1/units and
// optimal; common mass stays in place on the diagonal.
TransportResult ot(const MetricSpace& m, const MassVector& a, const MassVector& b);

double ot_cost(const MetricSpace& m, const MassVector& a, const MassVector& b);

// ot_cost * units: the common-denominator numerator used for exact
// objective comparisons.
double ot_numerator(const MetricSpace& m, const MassVector& a, const MassVector& b);

// Optimality certificate: true when the residual network of the plan has no
// cycle of cost below -tol (Bellman-Ford over row/column nodes).
bool plan_is_optimal(const MetricSpace& m, const Coupling& plan, double tol);

struct DrainResult {
  int target = -1;
  MassVector shifted;
};

// Moves alpha_units of mass at `source` one lane along an optimal plan of
// (z, y): returns the smallest-index target != source whose lane carries at
// least alpha_units, and z' = z + alpha*(e_target - e_source). The
// decomposition OT(z,y) = alpha*d(source,target) + OT(z',y) then holds.
// Requires z[source] >= y[source] + n * alpha_units in exact units.
DrainResult drain_step(const MetricSpace& m, const MassVector& z, const MassVector& y,
                       int source, Units alpha_units);

}  // namespace mts
