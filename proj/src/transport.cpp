#include "mts/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const MetricSpace& m, const MassVector& a, const MassVector& b) {
  if (a.size() != m.size() || b.size() != m.size())
    throw std::invalid_argument("ot: mass vector size does not match the metric");
  if (a.units() != b.units())
    throw std::invalid_argument("ot: operands use different units; rescale first");
}

}  // namespace

double Coupling::numerator(const MetricSpace& m) const {
  double num = 0.0;
  const int n = static_cast<int>(flow.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && flow[i][j] != 0) num += static_cast<double>(flow[i][j]) * m.distance(i, j);
  return num;
}

std::vector<Units> Coupling::row_sums() const {
  std::vector<Units> out(flow.size(), 0);
  for (std::size_t i = 0; i < flow.size(); ++i)
    for (Units f : flow[i]) out[i] += f;
  return out;
}

std::vector<Units> Coupling::col_sums() const {
  std::vector<Units> out(flow.size(), 0);
  for (const auto& row : flow)
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  return out;
}

// Successive shortest paths on the surplus/deficit bipartite network with
// Johnson potentials. Supplies and demands are integers, so every
// augmentation is integral and the final plan is a vertex of the coupling
// polytope. Common mass never leaves the diagonal; for metric costs this
// reduced form attains the optimum over all couplings.
TransportResult ot(const MetricSpace& m, const MassVector& a, const MassVector& b) {
  check_pair(m, a, b);
  const int n = m.size();

  Coupling plan;
  plan.units = a.units();
  plan.flow.assign(n, std::vector<Units>(n, 0));

  std::vector<Units> sup(n, 0), dem(n, 0);
  Units remaining = 0;
  for (int i = 0; i < n; ++i) {
    plan.flow[i][i] = std::min(a[i], b[i]);
    const Units diff = a[i] - b[i];
    if (diff > 0) {
      sup[i] = diff;
      remaining += diff;
    } else {
      dem[i] = -diff;
    }
  }

  std::vector<double> pot_s(n, 0.0), pot_t(n, 0.0);
  std::vector<double> ds(n), dt(n);
  std::vector<bool> vis_s(n), vis_t(n);
  std::vector<int> par_t(n), par_s(n);

  while (remaining > 0) {
    std::fill(ds.begin(), ds.end(), kInf);
    std::fill(dt.begin(), dt.end(), kInf);
    std::fill(vis_s.begin(), vis_s.end(), false);
    std::fill(vis_t.begin(), vis_t.end(), false);
    std::fill(par_t.begin(), par_t.end(), -1);
    std::fill(par_s.begin(), par_s.end(), -1);
    for (int i = 0; i < n; ++i)
      if (sup[i] > 0) ds[i] = 0.0;

    // Dense Dijkstra over the 2n row/column nodes.
    while (true) {
      int side = -1, node = -1;
      double best = kInf;
      for (int i = 0; i < n; ++i)
        if (!vis_s[i] && ds[i] < best) best = ds[i], side = 0, node = i;
      for (int j = 0; j < n; ++j)
        if (!vis_t[j] && dt[j] < best) best = dt[j], side = 1, node = j;
      if (node < 0) break;
      if (side == 0) {
        vis_s[node] = true;
        for (int j = 0; j < n; ++j) {
          if (vis_t[j] || j == node) continue;
          const double rc =
              std::max(0.0, m.distance(node, j) + pot_s[node] - pot_t[j]);
          if (ds[node] + rc < dt[j]) {
            dt[j] = ds[node] + rc;
            par_t[j] = node;
          }
        }
      } else {
        vis_t[node] = true;
        for (int i = 0; i < n; ++i) {
          if (vis_s[i] || i == node || plan.flow[i][node] == 0) continue;
          const double rc =
              std::max(0.0, -m.distance(i, node) + pot_t[node] - pot_s[i]);
          if (dt[node] + rc < ds[i]) {
            ds[i] = dt[node] + rc;
            par_s[i] = node;
          }
        }
      }
    }

    int sink = -1;
    double sink_dist = kInf;
    for (int j = 0; j < n; ++j)
      if (dem[j] > 0 && dt[j] < sink_dist) sink_dist = dt[j], sink = j;
    if (sink < 0) throw std::logic_error("ot: no augmenting path on a feasible instance");

    for (int i = 0; i < n; ++i) pot_s[i] += std::min(ds[i], sink_dist);
    for (int j = 0; j < n; ++j) pot_t[j] += std::min(dt[j], sink_dist);

    Units bottleneck = dem[sink];
    for (int tj = sink;;) {
      const int si = par_t[tj];
      if (par_s[si] < 0) {
        bottleneck = std::min(bottleneck, sup[si]);
        break;
      }
      bottleneck = std::min(bottleneck, plan.flow[si][par_s[si]]);
      tj = par_s[si];
    }
    for (int tj = sink;;) {
      const int si = par_t[tj];
      plan.flow[si][tj] += bottleneck;
      if (par_s[si] < 0) {
        sup[si] -= bottleneck;
        break;
      }
      plan.flow[si][par_s[si]] -= bottleneck;
      tj = par_s[si];
    }
    dem[sink] -= bottleneck;
    remaining -= bottleneck;
  }

  TransportResult result;
  result.plan = std::move(plan);
  result.cost = result.plan.cost(m);
  return result;
}

double ot_cost(const MetricSpace& m, const MassVector& a, const MassVector& b) {
  return ot(m, a, b).cost;
}

double ot_numerator(const MetricSpace& m, const MassVector& a, const MassVector& b) {
  return ot(m, a, b).plan.numerator(m);
}

// Negative-cycle scan over the residual digraph of the plan: row i ->
// column j always (cost d(i,j)), column j -> row i when flow(i,j) > 0
// (cost -d(i,j)). The plan is optimal iff no residual cycle is negative.
bool plan_is_optimal(const MetricSpace& m, const Coupling& plan, double tol) {
  const int n = m.size();
  const int v = 2 * n;
  std::vector<std::vector<double>> w(v, std::vector<double>(v, kInf));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[i][n + j] = m.distance(i, j);
      if (plan.flow[i][j] > 0) w[n + j][i] = -m.distance(i, j);
    }
  for (int mid = 0; mid < v; ++mid)
    for (int i = 0; i < v; ++i) {
      if (w[i][mid] == kInf) continue;
      for (int j = 0; j < v; ++j)
        if (w[mid][j] != kInf && w[i][mid] + w[mid][j] < w[i][j])
          w[i][j] = w[i][mid] + w[mid][j];
    }
  for (int u = 0; u < v; ++u)
    if (w[u][u] < -tol) return false;
  return true;
}

DrainResult drain_step(const MetricSpace& m, const MassVector& z, const MassVector& y,
                       int source, Units alpha_units) {
  check_pair(m, z, y);
  const int n = m.size();
  if (source < 0 || source >= n) throw std::invalid_argument("drain_step: bad source point");
  if (alpha_units < 1) throw std::invalid_argument("drain_step: alpha must be positive");
  if (z[source] < y[source] + static_cast<Units>(n) * alpha_units) {
    std::ostringstream os;
    os << "drain_step: need z[source] >= y[source] + n*alpha, have " << z[source] << " < "
       << y[source] << " + " << n << "*" << alpha_units;
    throw std::invalid_argument(os.str());
  }

  const Coupling plan = ot(m, z, y).plan;
  int target = -1;
  for (int j = 0; j < n; ++j) {
    if (j == source) continue;
    if (plan.flow[source][j] >= alpha_units) {
      target = j;
      break;
    }
  }
  if (target < 0) throw std::logic_error("drain_step: no lane carries alpha despite hypothesis");

  std::vector<Units> shifted = z.raw();
  shifted[source] -= alpha_units;
  shifted[target] += alpha_units;
  return DrainResult{target, MassVector(z.units(), std::move(shifted))};
}

}  // namespace mts
