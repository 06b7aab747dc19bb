#include "mts/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mts/transport.hpp"

namespace mts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_config(const DiscretizerConfig& cfg, int n) {
  if (cfg.k < 1) throw std::invalid_argument("discretizer: k must be positive");
  if (cfg.require_k_ge_n2 && cfg.k < static_cast<Units>(n) * n) {
    std::ostringstream os;
    os << "discretizer: k = " << cfg.k << " is below n^2 = " << n * n
       << "; the guarantees need k >= n^2 (disable require_k_ge_n2 to probe anyway)";
    throw std::invalid_argument(os.str());
  }
}

void enumerate_rec(int slot, int n, Units left, std::vector<Units>& cur,
                   std::vector<std::vector<Units>>& out) {
  if (slot == n - 1) {
    cur[slot] = left;
    out.push_back(cur);
    return;
  }
  for (Units v = 0; v <= left; ++v) {
    cur[slot] = v;
    enumerate_rec(slot + 1, n, left - v, cur, out);
  }
}

// Common grid for the potential: x lives in P_k, z = x/2 + 1/(2n) needs
// denominator 2nk, y keeps its own unit.
Units common_unit(int n, Units k, Units y_units) {
  return lcm_units(2 * static_cast<Units>(n) * k, y_units);
}

std::vector<Units> z_units(const std::vector<Units>& x, int n, Units k, Units ubig) {
  const Units scale = ubig / (2 * k);
  const Units base = ubig / (2 * static_cast<Units>(n));
  std::vector<Units> z(n);
  for (int i = 0; i < n; ++i) z[i] = x[i] * scale + base;
  return z;
}

struct Scan {
  Units ubig = 0;
  double tolerance = 0.0;  // in numerator units of ubig
  std::vector<std::vector<Units>> candidates;
  std::vector<double> objective;  // D-numerator + movement-numerator, at ubig
  std::vector<double> movement;   // movement numerator, at ubig
};

// Evaluates D(x, y) * ubig and OT(x_prev, x) * ubig for every configuration,
// in lexicographic candidate order.
Scan scan_configurations(const MetricSpace& m, const DiscretizerConfig& cfg,
                         const MassVector* x_prev, const MassVector& y) {
  const int n = m.size();
  const Units k = cfg.k;
  Scan scan;
  scan.ubig = common_unit(n, k, y.units());
  scan.tolerance = 1e-9 * m.diameter() * static_cast<double>(scan.ubig);

  const double count = configuration_count(n, k);
  if (count > static_cast<double>(cfg.enumeration_cap)) {
    if (!cfg.allow_local_search) {
      std::ostringstream os;
      os << "discretizer: |P_k| ~= " << count << " exceeds the enumeration cap "
         << cfg.enumeration_cap
         << "; reduce n or k, raise the cap, or enable the (non-certified) local search";
      throw std::invalid_argument(os.str());
    }
    return scan;  // empty candidate list signals local-search mode
  }

  scan.candidates = enumerate_configurations(n, k);
  const MassVector y_big = y.rescaled(scan.ubig);
  const Units move_scale = scan.ubig / k;
  scan.objective.reserve(scan.candidates.size());
  scan.movement.reserve(scan.candidates.size());
  for (const auto& cand : scan.candidates) {
    const MassVector z(scan.ubig, z_units(cand, n, k, scan.ubig));
    const double d_num = 2.0 * ot_numerator(m, z, y_big);
    double move_num = 0.0;
    if (x_prev != nullptr)
      move_num = ot_numerator(m, *x_prev, MassVector(k, cand)) * static_cast<double>(move_scale);
    scan.objective.push_back(d_num + move_num);
    scan.movement.push_back(move_num);
  }
  return scan;
}

MassVector local_search(const MetricSpace& m, const DiscretizerConfig& cfg,
                        const MassVector* x_prev, const MassVector& y) {
  const int n = m.size();
  const Units k = cfg.k;
  const Units ubig = common_unit(n, k, y.units());
  const MassVector y_big = y.rescaled(ubig);
  const Units move_scale = ubig / k;

  auto evaluate = [&](const std::vector<Units>& x) {
    const MassVector z(ubig, z_units(x, n, k, ubig));
    double num = 2.0 * ot_numerator(m, z, y_big);
    if (x_prev != nullptr)
      num += ot_numerator(m, *x_prev, MassVector(k, x)) * static_cast<double>(move_scale);
    return num;
  };

  std::vector<Units> cur =
      x_prev != nullptr ? x_prev->raw() : MassVector::point_mass(n, 0, k).raw();
  double cur_value = evaluate(cur);
  for (bool improved = true; improved;) {
    improved = false;
    for (int from = 0; from < n && !improved; ++from) {
      if (cur[from] == 0) continue;
      for (int to = 0; to < n && !improved; ++to) {
        if (to == from) continue;
        --cur[from];
        ++cur[to];
        const double value = evaluate(cur);
        if (value < cur_value - 1e-12) {
          cur_value = value;
          improved = true;
        } else {
          ++cur[from];
          --cur[to];
        }
      }
    }
  }
  return MassVector(k, std::move(cur));
}

MassVector argmin_configuration(const MetricSpace& m, const DiscretizerConfig& cfg,
                                const MassVector* x_prev, const MassVector& y) {
  check_config(cfg, m.size());
  if (x_prev != nullptr && x_prev->units() != cfg.k)
    throw std::invalid_argument("discretizer: x_prev must have units k");

  const Scan scan = scan_configurations(m, cfg, x_prev, y);
  if (scan.candidates.empty()) return local_search(m, cfg, x_prev, y);

  double best_obj = kInf;
  for (double v : scan.objective) best_obj = std::min(best_obj, v);

  // Ties on the objective favor maximal movement away from x_prev, then the
  // lexicographically smallest configuration (first in candidate order).
  double best_move = -kInf;
  for (std::size_t i = 0; i < scan.candidates.size(); ++i)
    if (scan.objective[i] <= best_obj + scan.tolerance)
      best_move = std::max(best_move, scan.movement[i]);
  for (std::size_t i = 0; i < scan.candidates.size(); ++i)
    if (scan.objective[i] <= best_obj + scan.tolerance &&
        scan.movement[i] >= best_move - scan.tolerance)
      return MassVector(cfg.k, scan.candidates[i]);
  throw std::logic_error("discretizer: empty candidate scan");
}

}  // namespace

std::vector<std::vector<Units>> enumerate_configurations(int n, Units k) {
  if (n < 1) throw std::invalid_argument("enumerate_configurations: need n >= 1");
  std::vector<std::vector<Units>> out;
  std::vector<Units> cur(n, 0);
  enumerate_rec(0, n, k, cur, out);
  return out;
}

double configuration_count(int n, Units k) {
  // C(k+n-1, n-1)
  double count = 1.0;
  for (int i = 1; i <= n - 1; ++i)
    count *= static_cast<double>(k + n - i) / static_cast<double>(i);
  return count;
}

double potential(const MetricSpace& m, const MassVector& x, const MassVector& y) {
  const int n = m.size();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("potential: operand size does not match the metric");
  const Units k = x.units();
  const Units ubig = common_unit(n, k, y.units());
  const MassVector z(ubig, z_units(x.raw(), n, k, ubig));
  return 2.0 * ot_numerator(m, z, y.rescaled(ubig)) / static_cast<double>(ubig);
}

MassVector select(const MetricSpace& m, const DiscretizerConfig& cfg, const MassVector& x_prev,
                  const MassVector& y_t) {
  return argmin_configuration(m, cfg, &x_prev, y_t);
}

MassVector select_initial(const MetricSpace& m, const DiscretizerConfig& cfg,
                          const MassVector& y0) {
  return argmin_configuration(m, cfg, nullptr, y0);
}

double verify_necessary_condition(const MetricSpace& m, const DiscretizerConfig& cfg,
                                  const MassVector& x_t, const MassVector& y_t) {
  check_config(cfg, m.size());
  if (x_t.units() != cfg.k)
    throw std::invalid_argument("verify_necessary_condition: x_t must have units k");
  const Scan scan = scan_configurations(m, cfg, &x_t, y_t);
  if (scan.candidates.empty())
    throw std::invalid_argument("verify_necessary_condition: enumeration cap exceeded");

  // scan.objective[i] = D(x', y_t)*ubig + OT(x_t, x')*ubig, so the slack of
  // the strict inequality against x' is objective[i] - D(x_t, y_t)*ubig.
  const MassVector z_t(scan.ubig, z_units(x_t.raw(), m.size(), cfg.k, scan.ubig));
  const double own = 2.0 * ot_numerator(m, z_t, y_t.rescaled(scan.ubig));

  double worst = kInf;
  for (std::size_t i = 0; i < scan.candidates.size(); ++i) {
    if (scan.candidates[i] == x_t.raw()) continue;
    worst = std::min(worst, scan.objective[i] - own);
  }
  return worst / static_cast<double>(scan.ubig);
}

StepCertificate make_certificate(const MetricSpace& m, int t, const MassVector& x_prev,
                                 const MassVector& y_prev, const MassVector& y_new,
                                 const MassVector& x_new) {
  StepCertificate cert{t, x_prev, x_new, y_new};
  cert.movement = ot_cost(m, x_prev, x_new);
  cert.potential_before = potential(m, x_prev, y_prev);
  cert.potential_after = potential(m, x_new, y_new);
  cert.objective = cert.potential_after + cert.movement;

  // Exact integer-units comparison of x(p) <= 2*y(p).
  cert.dominance_ok = true;
  for (int i = 0; i < m.size(); ++i)
    if (x_new[i] * y_new.units() > 2 * y_new[i] * x_new.units()) cert.dominance_ok = false;

  const double y_move = ot_cost(m, y_prev, y_new);
  cert.descent_slack =
      (-cert.movement + 2.0 * y_move) - (cert.potential_after - cert.potential_before);
  return cert;
}

DiscretizeResult discretize(const MetricSpace& m, const DiscretizerConfig& cfg,
                            const FractionalTrace& y_trace) {
  for (const MassVector& y : y_trace.states)
    if (y.units() != y_trace.units())
      throw std::invalid_argument("discretize: trace states must share one unit");

  DiscretizeResult result;
  MassVector x = select_initial(m, cfg, y_trace.initial);
  result.initial_potential = potential(m, x, y_trace.initial);
  result.x_trace.initial = x;
  result.worst_descent_slack = kInf;

  const MassVector* y_prev = &y_trace.initial;
  for (int t = 0; t < y_trace.length(); ++t) {
    const MassVector& y_t = y_trace.states[t];
    MassVector x_next = select(m, cfg, x, y_t);
    StepCertificate cert = make_certificate(m, t + 1, x, *y_prev, y_t, x_next);
    result.movement_x += cert.movement;
    result.movement_y += ot_cost(m, *y_prev, y_t);
    result.all_dominance_ok = result.all_dominance_ok && cert.dominance_ok;
    result.worst_descent_slack = std::min(result.worst_descent_slack, cert.descent_slack);
    result.certificates.push_back(std::move(cert));
    result.x_trace.states.push_back(x_next);
    x = std::move(x_next);
    y_prev = &y_t;
  }
  if (y_trace.length() == 0) result.worst_descent_slack = 0.0;

  const double tol = 1e-9 * m.diameter();
  result.movement_bound_slack = result.initial_potential + 2.0 * result.movement_y +
                                y_trace.length() * tol - result.movement_x;
  return result;
}

}  // namespace mts
