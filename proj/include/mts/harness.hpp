#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mts/discretizer.hpp"
#include "mts/instance.hpp"

namespace mts {

// One experiment: metric + cost source + y-strategy + agent count, plus
// verification and output switches. Loaded from "key = value" text files.
struct RunConfig {
  std::string metric_spec = "uniform:2";
  // "phase:<n>:<phases>[:pattern]", "cruel:<alg>:<T>[:magnitude]",
  // "random:<n>:<T>:<seed>[:scale]", or "file:<path>".
  std::string cost_spec = "phase:2:1";
  // "uniform_fractional", "balls_urns", "greedy", "replay:<path>",
  // "random[:<seed>]".
  std::string strategy_spec = "uniform_fractional";
  Units k = 4;
  int initial = 0;
  std::uint64_t seed = 0;
  // "auto" applies the saturation splitter on uniform metrics only.
  std::string split = "auto";
  // "auto" scans the necessary condition when T <= 100.
  std::string verify_nc = "auto";
  // "auto" uses tau = 1/n^2.
  std::string tau = "auto";
  bool allow_k_below_n2 = false;
  Units enumeration_cap = 1'000'000;
  std::string trace_path;
  std::string report_path;
  std::string agents_path;

  static RunConfig load(const std::string& path);
  static RunConfig parse(std::istream& in, const std::string& origin);
};

struct RunReport {
  int n = 0;
  Units k = 0;
  Units y_units = 0;
  int steps = 0;
  double beta = 0.0;  // additive constant, set to the diameter

  CostBreakdown y_cost;
  CostBreakdown x_cost;
  CostBreakdown collective_cost;
  double opt = 0.0;
  double initial_potential = 0.0;
  double ratio = 0.0;
  double adjusted_ratio = 0.0;

  int dominance_violations = 0;
  int descent_violations = 0;
  double worst_descent_slack = 0.0;
  bool movement_bound_ok = true;
  bool service_bound_ok = true;
  bool collective_identity_ok = true;
  bool nc_checked = false;
  double nc_worst_slack = 0.0;

  double tau = 0.0;
  FixedCostTotals fixed;
  bool fixed_ok = true;

  bool certificates_ok = true;

  std::vector<std::pair<std::string, std::string>> to_fields() const;
  void save(const std::string& path) const;
};

// Full pipeline: metric -> costs -> y-trace -> discretize -> collective
// realization -> offline optimum, with every certificate evaluated and the
// step trace / report written when paths are configured.
RunReport run(const RunConfig& config);

struct VerifyReport {
  bool parsed = false;
  bool dominance_ok = false;
  bool descent_ok = false;
  bool movement_bound_ok = false;
  bool service_bound_ok = false;
  bool plans_ok = false;
  bool potentials_consistent = false;
  bool nc_checked = false;
  bool nc_ok = true;

  bool all_ok() const {
    return parsed && dominance_ok && descent_ok && movement_bound_ok && service_bound_ok &&
           plans_ok && potentials_consistent && (!nc_checked || nc_ok);
  }
};

// Recomputes every certificate class of a stored trace from the raw (x, y,
// cost) data, trusting none of the stored derived values. Prints one line per
// class to `out`.
VerifyReport verify_trace(const std::string& trace_path, std::ostream& out,
                          bool check_necessary_condition = false);

struct SweepAxis {
  std::string name;            // substituted for "{name}" in config strings
  std::vector<std::string> values;
};

// "k=3,9" or "seed=1..5".
SweepAxis parse_axis(const std::string& text);

// Grid of runs over the axes' cartesian product; one CSV row per cell,
// failures recorded per cell without stopping the sweep.
void sweep(const RunConfig& config_template, const std::vector<SweepAxis>& axes,
           std::ostream& csv_out);

}  // namespace mts
