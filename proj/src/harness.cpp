#include "mts/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mts/adversaries.hpp"
#include "mts/collective.hpp"
#include "mts/strategies.hpp"
#include "mts/transport.hpp"

namespace mts {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_tokens(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

CostSequence build_costs(const RunConfig& config, const MetricSpace& metric) {
  const auto parts = split_tokens(config.cost_spec, ':');
  const std::string& kind = parts[0];
  if (kind == "phase") {
    if (parts.size() < 3) throw std::invalid_argument("cost spec: phase:<n>:<phases>[:pattern]");
    const int n = std::stoi(parts[1]);
    const int phases = std::stoi(parts[2]);
    PhasePattern pattern = PhasePattern::kRoundRobin;
    if (parts.size() > 3 && parts[3] == "worst-last") pattern = PhasePattern::kWorstLast;
    return phase_adversary(n, phases, pattern);
  }
  if (kind == "cruel") {
    if (parts.size() < 3) throw std::invalid_argument("cost spec: cruel:<alg>:<T>[:magnitude]");
    if (parts[1] != "greedy")
      throw std::invalid_argument("cost spec: unknown co-simulated algorithm '" + parts[1] + "'");
    const int steps = std::stoi(parts[2]);
    const double magnitude = parts.size() > 3 ? std::stod(parts[3]) : 1.0;
    GreedyStrategy greedy(metric, config.initial);
    return cruel_adversary(metric, greedy, steps, magnitude);
  }
  if (kind == "random") {
    if (parts.size() < 4) throw std::invalid_argument("cost spec: random:<n>:<T>:<seed>[:scale]");
    const double scale = parts.size() > 4 ? std::stod(parts[4]) : 1.0;
    return random_costs(std::stoi(parts[1]), std::stoi(parts[2]), std::stoull(parts[3]), scale);
  }
  if (kind == "file") {
    if (parts.size() < 2) throw std::invalid_argument("cost spec: file:<path>");
    return CostSequence::load(config.cost_spec.substr(5));
  }
  return CostSequence::load(config.cost_spec);
}

bool is_phase_strategy(const std::string& spec) {
  return spec == "uniform_fractional" || spec == "balls_urns";
}

FractionalTrace build_y_trace(const RunConfig& config, const MetricSpace& metric,
                              const CostSequence& costs) {
  const auto parts = split_tokens(config.strategy_spec, ':');
  const std::string& kind = parts[0];
  if (kind == "uniform_fractional") {
    UniformFractionalStrategy s(metric);
    return run_strategy(s, costs, config.initial);
  }
  if (kind == "balls_urns") {
    BallsUrnsStrategy s(metric);
    return run_strategy(s, costs, config.initial);
  }
  if (kind == "greedy") {
    PointMassStrategy s(std::make_unique<GreedyStrategy>(metric, config.initial), metric.size());
    return run_strategy(s, costs, config.initial);
  }
  if (kind == "replay") {
    if (parts.size() < 2) throw std::invalid_argument("strategy spec: replay:<path>");
    FractionalTrace trace = load_trace(config.strategy_spec.substr(7), metric.size());
    if (trace.length() != costs.length())
      throw std::invalid_argument("replayed trace length does not match the cost sequence");
    return trace;
  }
  if (kind == "random") {
    const std::uint64_t seed = parts.size() > 1 ? std::stoull(parts[1]) : config.seed;
    const Units units = 2 * static_cast<Units>(metric.size()) * config.k;
    return random_trace(metric.size(), units, costs.length(), config.initial, seed);
  }
  if (kind == "oscillating") {
    const int a = parts.size() > 1 ? std::stoi(parts[1]) : 0;
    const int b = parts.size() > 2 ? std::stoi(parts[2]) : std::min(1, metric.size() - 1);
    return oscillating_trace(metric.size(), costs.length(), config.initial, a, b);
  }
  throw std::invalid_argument("unknown strategy spec: " + config.strategy_spec);
}

void write_mass_line(std::ostream& out, const char* tag, int t, const MassVector& v) {
  out << tag;
  if (t >= 0) out << " " << t;
  for (int i = 0; i < v.size(); ++i) out << " " << v[i];
  out << "\n";
}

// Step trace: header, metric, costs, then one record block per step carrying
// the raw distributions, the integral plan, and every certificate value.
void write_trace_file(const std::string& path, const RunConfig& config, const MetricSpace& metric,
                      const CostSequence& costs, const FractionalTrace& y_trace,
                      const DiscretizeResult& result, const RunReport& report,
                      const std::vector<double>& nc_slacks) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  const int n = metric.size();
  out << "mtstrace 1\n";
  out << "n " << n << "\n";
  out << "k " << config.k << "\n";
  out << "uy " << y_trace.units() << "\n";
  out << "t " << y_trace.length() << "\n";
  out << "initial " << config.initial << "\n";
  out << "tau " << fmt(report.tau) << "\n";
  out << "metric\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << fmt(metric.distance(i, j));
    out << "\n";
  }
  out << "costs\n";
  for (const CostVector& c : costs.steps) {
    for (int i = 0; i < n; ++i) out << (i ? " " : "") << fmt(c[i]);
    out << "\n";
  }
  write_mass_line(out, "y0", -1, y_trace.initial);
  write_mass_line(out, "x0", -1, result.x_trace.initial);
  const MassVector* x_prev = &result.x_trace.initial;
  for (int t = 0; t < y_trace.length(); ++t) {
    const StepCertificate& cert = result.certificates[t];
    out << "step " << (t + 1) << "\n";
    write_mass_line(out, "y", -1, y_trace.states[t]);
    write_mass_line(out, "x", -1, result.x_trace.states[t]);
    const Coupling plan = ot(metric, *x_prev, result.x_trace.states[t]).plan;
    int lanes = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (plan.flow[i][j] > 0) ++lanes;
    out << "plan " << lanes;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (plan.flow[i][j] > 0) out << " " << i << " " << j << " " << plan.flow[i][j];
    out << "\n";
    out << "pot " << fmt(cert.potential_after) << "\n";
    out << "mvt " << fmt(cert.movement) << "\n";
    out << "dom " << (cert.dominance_ok ? 1 : 0) << "\n";
    out << "dslack " << fmt(cert.descent_slack) << "\n";
    if (!nc_slacks.empty()) out << "ncslack " << fmt(nc_slacks[t]) << "\n";
    out << "endstep\n";
    x_prev = &result.x_trace.states[t];
  }
  out << "end\n";
}

double resolve_tau(const std::string& spec, int n) {
  if (spec == "auto") return 1.0 / (static_cast<double>(n) * n);
  return std::stod(spec);
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in, const std::string& origin) {
  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "metric") config.metric_spec = value;
    else if (key == "costs") config.cost_spec = value;
    else if (key == "strategy") config.strategy_spec = value;
    else if (key == "k") config.k = std::stoll(value);
    else if (key == "initial") config.initial = std::stoi(value);
    else if (key == "seed") config.seed = std::stoull(value);
    else if (key == "split") config.split = value;
    else if (key == "verify_nc") config.verify_nc = value;
    else if (key == "tau") config.tau = value;
    else if (key == "allow_k_below_n2") config.allow_k_below_n2 = value == "true" || value == "1";
    else if (key == "enumeration_cap") config.enumeration_cap = std::stoll(value);
    else if (key == "trace") config.trace_path = value;
    else if (key == "report") config.report_path = value;
    else if (key == "agents") config.agents_path = value;
    else
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": unknown key '" + key +
                               "'");
  }
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse(in, path);
}

std::vector<std::pair<std::string, std::string>> RunReport::to_fields() const {
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("n", std::to_string(n));
  f.emplace_back("k", std::to_string(k));
  f.emplace_back("y_units", std::to_string(y_units));
  f.emplace_back("steps", std::to_string(steps));
  f.emplace_back("beta", fmt(beta));
  f.emplace_back("y_movement", fmt(y_cost.movement));
  f.emplace_back("y_service", fmt(y_cost.service));
  f.emplace_back("y_total", fmt(y_cost.total));
  f.emplace_back("x_movement", fmt(x_cost.movement));
  f.emplace_back("x_service", fmt(x_cost.service));
  f.emplace_back("x_total", fmt(x_cost.total));
  f.emplace_back("collective_movement", fmt(collective_cost.movement));
  f.emplace_back("collective_service", fmt(collective_cost.service));
  f.emplace_back("collective_total", fmt(collective_cost.total));
  f.emplace_back("opt", fmt(opt));
  f.emplace_back("p0", fmt(initial_potential));
  f.emplace_back("ratio", fmt(ratio));
  f.emplace_back("adjusted_ratio", fmt(adjusted_ratio));
  f.emplace_back("dominance_violations", std::to_string(dominance_violations));
  f.emplace_back("descent_violations", std::to_string(descent_violations));
  f.emplace_back("worst_descent_slack", fmt(worst_descent_slack));
  f.emplace_back("movement_bound_ok", movement_bound_ok ? "1" : "0");
  f.emplace_back("service_bound_ok", service_bound_ok ? "1" : "0");
  f.emplace_back("collective_identity_ok", collective_identity_ok ? "1" : "0");
  f.emplace_back("nc_checked", nc_checked ? "1" : "0");
  f.emplace_back("nc_worst_slack", fmt(nc_worst_slack));
  f.emplace_back("tau", fmt(tau));
  f.emplace_back("fixed_variable_total", fmt(fixed.variable_total));
  f.emplace_back("fixed_fixed_total", fmt(fixed.fixed_total));
  f.emplace_back("fixed_ok", fixed_ok ? "1" : "0");
  f.emplace_back("certificates_ok", certificates_ok ? "1" : "0");
  return f;
}

void RunReport::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << "mtsreport 1\n";
  for (const auto& [key, value] : to_fields()) out << key << " " << value << "\n";
}

RunReport run(const RunConfig& config) {
  const MetricSpace metric = MetricSpace::from_spec(config.metric_spec);
  const int n = metric.size();
  if (config.initial < 0 || config.initial >= n)
    throw std::invalid_argument("run: initial point out of range");

  CostSequence costs = build_costs(config, metric);
  if (costs.n != n) throw std::invalid_argument("run: cost source size does not match the metric");

  const bool do_split =
      config.split == "on" ||
      (config.split == "auto" && metric.is_uniform() && is_phase_strategy(config.strategy_spec));
  if (do_split) costs = split_at_saturation(costs);

  const FractionalTrace y_trace = build_y_trace(config, metric, costs);

  DiscretizerConfig dcfg;
  dcfg.k = config.k;
  dcfg.require_k_ge_n2 = !config.allow_k_below_n2;
  dcfg.enumeration_cap = config.enumeration_cap;
  const DiscretizeResult result = discretize(metric, dcfg, y_trace);

  const CollectiveRun collective = realize_collective(metric, result.x_trace, costs);
  const OfflineOpt opt = offline_opt(metric, costs, config.initial);

  RunReport report;
  report.n = n;
  report.k = config.k;
  report.y_units = y_trace.units();
  report.steps = y_trace.length();
  report.beta = metric.diameter();
  report.y_cost = fractional_cost(metric, y_trace, costs);
  report.x_cost = fractional_cost(metric, result.x_trace, costs);
  report.collective_cost = collective.average;
  report.opt = opt.value;
  report.initial_potential = result.initial_potential;

  const double inf = std::numeric_limits<double>::infinity();
  report.ratio = report.opt > 0.0 ? report.x_cost.total / report.opt
                                  : (report.x_cost.total > 0.0 ? inf : 0.0);
  report.adjusted_ratio = report.opt > 0.0 ? (report.x_cost.total - report.beta) / report.opt
                                           : (report.x_cost.total > report.beta ? inf : 0.0);

  const double tol = 1e-9 * metric.diameter();
  report.worst_descent_slack = result.worst_descent_slack;
  for (const StepCertificate& cert : result.certificates) {
    if (!cert.dominance_ok) ++report.dominance_violations;
    if (cert.descent_slack < -tol) ++report.descent_violations;
  }
  report.movement_bound_ok = result.movement_bound_slack >= 0.0;
  report.service_bound_ok =
      report.x_cost.service <= 2.0 * report.y_cost.service + 1e-9 * (1.0 + report.y_cost.service);

  const double col_tol = 1e-9 * metric.diameter() * std::max(1, report.steps);
  report.collective_identity_ok =
      std::abs(collective.average.movement - report.x_cost.movement) <= col_tol &&
      std::abs(collective.average.service - report.x_cost.service) <= col_tol;

  std::vector<double> nc_slacks;
  report.nc_checked =
      config.verify_nc == "on" || (config.verify_nc == "auto" && report.steps <= 100);
  if (report.nc_checked) {
    report.nc_worst_slack = inf;
    for (int t = 0; t < report.steps; ++t) {
      const double slack =
          verify_necessary_condition(metric, dcfg, result.x_trace.states[t], y_trace.states[t]);
      nc_slacks.push_back(slack);
      report.nc_worst_slack = std::min(report.nc_worst_slack, slack);
    }
    if (report.steps == 0) report.nc_worst_slack = 0.0;
  }

  report.tau = resolve_tau(config.tau, n);
  report.fixed = fixed_cost_accounting(metric, result.x_trace, report.tau);
  report.fixed_ok = report.fixed.fixed_total <=
                    report.fixed.variable_total + 1e-9 * (1.0 + report.fixed.variable_total);

  report.certificates_ok = report.dominance_violations == 0 && report.descent_violations == 0 &&
                           report.movement_bound_ok && report.service_bound_ok &&
                           report.collective_identity_ok &&
                           (!report.nc_checked || report.nc_worst_slack >= -tol);

  if (!config.trace_path.empty())
    write_trace_file(config.trace_path, config, metric, costs, y_trace, result, report, nc_slacks);
  if (!config.report_path.empty()) report.save(config.report_path);
  if (!config.agents_path.empty()) save_collective(config.agents_path, metric, collective, costs);
  return report;
}

namespace {

struct TraceData {
  int n = 0;
  Units k = 0;
  Units uy = 0;
  int steps = 0;
  int initial = 0;
  double tau = 0.0;
  std::vector<std::vector<double>> metric_rows;
  CostSequence costs;
  std::vector<MassVector> y;  // y[0] = y(0)
  std::vector<MassVector> x;
  std::vector<Coupling> plans;
  std::vector<double> pots;
  std::vector<double> mvts;
  std::vector<int> doms;
  std::vector<double> dslacks;
  std::vector<double> ncslacks;
};

MassVector parse_mass(std::istringstream& in, int n, Units units, const std::string& origin) {
  std::vector<Units> mass(n);
  for (int i = 0; i < n; ++i)
    if (!(in >> mass[i])) throw std::runtime_error(origin + ": truncated mass vector");
  return MassVector(units, std::move(mass));
}

TraceData parse_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  TraceData data;
  std::string line, tag;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw std::runtime_error(path + ": truncated trace");
    return std::istringstream(line);
  };

  {
    auto row = next_line();
    int version = 0;
    if (!(row >> tag >> version) || tag != "mtstrace" || version != 1)
      throw std::runtime_error(path + ": not a mtstrace v1 file");
  }
  for (const char* key : {"n", "k", "uy", "t", "initial", "tau"}) {
    auto row = next_line();
    std::string have;
    row >> have;
    if (have != key) throw std::runtime_error(path + ": expected header key " + key);
    if (std::string(key) == "n") row >> data.n;
    else if (std::string(key) == "k") row >> data.k;
    else if (std::string(key) == "uy") row >> data.uy;
    else if (std::string(key) == "t") row >> data.steps;
    else if (std::string(key) == "initial") row >> data.initial;
    else row >> data.tau;
  }
  if (data.n < 1 || data.k < 1 || data.uy < 1 || data.steps < 0)
    throw std::runtime_error(path + ": bad trace header");

  next_line();  // "metric"
  for (int i = 0; i < data.n; ++i) {
    auto row = next_line();
    std::vector<double> r(data.n);
    for (int j = 0; j < data.n; ++j)
      if (!(row >> r[j])) throw std::runtime_error(path + ": truncated metric row");
    data.metric_rows.push_back(std::move(r));
  }
  next_line();  // "costs"
  data.costs.n = data.n;
  for (int t = 0; t < data.steps; ++t) {
    auto row = next_line();
    CostVector c(data.n);
    for (int i = 0; i < data.n; ++i)
      if (!(row >> c[i])) throw std::runtime_error(path + ": truncated cost row");
    data.costs.steps.push_back(std::move(c));
  }
  {
    auto row = next_line();
    row >> tag;
    if (tag != "y0") throw std::runtime_error(path + ": expected y0");
    data.y.push_back(parse_mass(row, data.n, data.uy, path));
  }
  {
    auto row = next_line();
    row >> tag;
    if (tag != "x0") throw std::runtime_error(path + ": expected x0");
    data.x.push_back(parse_mass(row, data.n, data.k, path));
  }
  for (int t = 0; t < data.steps; ++t) {
    next_line();  // "step <t>"
    for (;;) {
      auto row = next_line();
      row >> tag;
      if (tag == "endstep") break;
      if (tag == "y") data.y.push_back(parse_mass(row, data.n, data.uy, path));
      else if (tag == "x") data.x.push_back(parse_mass(row, data.n, data.k, path));
      else if (tag == "plan") {
        int lanes = 0;
        row >> lanes;
        Coupling plan;
        plan.units = data.k;
        plan.flow.assign(data.n, std::vector<Units>(data.n, 0));
        for (int l = 0; l < lanes; ++l) {
          int i = 0, j = 0;
          Units f = 0;
          if (!(row >> i >> j >> f)) throw std::runtime_error(path + ": truncated plan");
          plan.flow[i][j] = f;
        }
        data.plans.push_back(std::move(plan));
      } else if (tag == "pot") {
        double v;
        row >> v;
        data.pots.push_back(v);
      } else if (tag == "mvt") {
        double v;
        row >> v;
        data.mvts.push_back(v);
      } else if (tag == "dom") {
        int v;
        row >> v;
        data.doms.push_back(v);
      } else if (tag == "dslack") {
        double v;
        row >> v;
        data.dslacks.push_back(v);
      } else if (tag == "ncslack") {
        double v;
        row >> v;
        data.ncslacks.push_back(v);
      } else {
        throw std::runtime_error(path + ": unknown step record '" + tag + "'");
      }
    }
  }
  if (static_cast<int>(data.y.size()) != data.steps + 1 ||
      static_cast<int>(data.x.size()) != data.steps + 1 ||
      static_cast<int>(data.plans.size()) != data.steps)
    throw std::runtime_error(path + ": incomplete step records");
  return data;
}

}  // namespace

VerifyReport verify_trace(const std::string& trace_path, std::ostream& out,
                          bool check_necessary_condition) {
  VerifyReport report;
  TraceData data = parse_trace(trace_path);
  const MetricSpace metric{data.metric_rows};
  report.parsed = true;
  const double tol = 1e-9 * metric.diameter();

  int dominance_bad = 0, descent_bad = 0, plans_bad = 0, pot_bad = 0;
  double worst_descent = std::numeric_limits<double>::infinity();
  double movement_x = 0.0, movement_y = 0.0;

  for (int t = 1; t <= data.steps; ++t) {
    const StepCertificate cert =
        make_certificate(metric, t, data.x[t - 1], data.y[t - 1], data.y[t], data.x[t]);
    if (!cert.dominance_ok) ++dominance_bad;
    if (cert.descent_slack < -tol) ++descent_bad;
    worst_descent = std::min(worst_descent, cert.descent_slack);
    movement_x += cert.movement;
    movement_y += ot_cost(metric, data.y[t - 1], data.y[t]);

    const Coupling& plan = data.plans[t - 1];
    const bool marginals_ok =
        plan.row_sums() == data.x[t - 1].raw() && plan.col_sums() == data.x[t].raw();
    const bool cost_ok = std::abs(plan.cost(metric) - cert.movement) <= tol + 1e-12;
    if (!marginals_ok || !cost_ok || !plan_is_optimal(metric, plan, tol)) ++plans_bad;

    if (std::abs(data.pots[t - 1] - cert.potential_after) >
        1e-9 * (1.0 + std::abs(cert.potential_after)))
      ++pot_bad;
  }
  if (data.steps == 0) worst_descent = 0.0;

  const double p0 = potential(metric, data.x[0], data.y[0]);
  const double movement_slack =
      p0 + 2.0 * movement_y + data.steps * tol - movement_x;

  FractionalTrace y_trace{data.y[0], {data.y.begin() + 1, data.y.end()}};
  FractionalTrace x_trace{data.x[0], {data.x.begin() + 1, data.x.end()}};
  const CostBreakdown y_cost = fractional_cost(metric, y_trace, data.costs);
  const CostBreakdown x_cost = fractional_cost(metric, x_trace, data.costs);

  report.dominance_ok = dominance_bad == 0;
  report.descent_ok = descent_bad == 0;
  report.movement_bound_ok = movement_slack >= 0.0;
  report.service_bound_ok = x_cost.service <= 2.0 * y_cost.service + 1e-9 * (1.0 + y_cost.service);
  report.plans_ok = plans_bad == 0;
  report.potentials_consistent = pot_bad == 0;

  out << "dominance " << (report.dominance_ok ? "PASS" : "FAIL") << " "
      << (data.steps - dominance_bad) << "/" << data.steps << "\n";
  out << "descent " << (report.descent_ok ? "PASS" : "FAIL") << " worst_slack="
      << fmt(worst_descent) << "\n";
  out << "movement_bound " << (report.movement_bound_ok ? "PASS" : "FAIL") << " slack="
      << fmt(movement_slack) << "\n";
  out << "service_bound " << (report.service_bound_ok ? "PASS" : "FAIL") << " x="
      << fmt(x_cost.service) << " 2y=" << fmt(2.0 * y_cost.service) << "\n";
  out << "plans " << (report.plans_ok ? "PASS" : "FAIL") << " " << (data.steps - plans_bad) << "/"
      << data.steps << "\n";
  out << "stored_potentials " << (report.potentials_consistent ? "PASS" : "FAIL") << "\n";

  if (check_necessary_condition) {
    report.nc_checked = true;
    DiscretizerConfig dcfg;
    dcfg.k = data.k;
    dcfg.require_k_ge_n2 = false;
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= data.steps; ++t)
      worst = std::min(worst, verify_necessary_condition(metric, dcfg, data.x[t], data.y[t]));
    if (data.steps == 0) worst = 0.0;
    report.nc_ok = worst >= -tol;
    out << "necessary_condition " << (report.nc_ok ? "PASS" : "FAIL") << " worst_slack="
        << fmt(worst) << "\n";
  }
  return report;
}

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("axis must look like name=v1,v2 or name=a..b: " + text);
  SweepAxis axis;
  axis.name = trim(text.substr(0, eq));
  const std::string values = trim(text.substr(eq + 1));
  const auto range = values.find("..");
  if (range != std::string::npos) {
    const long lo = std::stol(values.substr(0, range));
    const long hi = std::stol(values.substr(range + 2));
    for (long v = lo; v <= hi; ++v) axis.values.push_back(std::to_string(v));
  } else {
    for (const std::string& v : split_tokens(values, ','))
      if (!trim(v).empty()) axis.values.push_back(trim(v));
  }
  if (axis.values.empty()) throw std::invalid_argument("axis has no values: " + text);
  return axis;
}

namespace {

std::string substitute(std::string text, const std::string& name, const std::string& value) {
  const std::string token = "{" + name + "}";
  for (auto pos = text.find(token); pos != std::string::npos; pos = text.find(token))
    text.replace(pos, token.size(), value);
  return text;
}

}  // namespace

void sweep(const RunConfig& config_template, const std::vector<SweepAxis>& axes,
           std::ostream& csv_out) {
  csv_out << "status";
  for (const SweepAxis& axis : axes) csv_out << "," << axis.name;
  csv_out << ",n,k,T,y_total,x_total,collective_total,opt,ratio,adjusted_ratio,p0,"
             "dominance_violations,descent_violations,worst_descent_slack,nc_worst_slack,"
             "certificates_ok\n";

  std::vector<std::size_t> index(axes.size(), 0);
  for (;;) {
    RunConfig config = config_template;
    std::vector<std::string> cell;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& value = axes[a].values[index[a]];
      cell.push_back(value);
      config.metric_spec = substitute(config.metric_spec, axes[a].name, value);
      config.cost_spec = substitute(config.cost_spec, axes[a].name, value);
      config.strategy_spec = substitute(config.strategy_spec, axes[a].name, value);
      config.trace_path = substitute(config.trace_path, axes[a].name, value);
      config.report_path = substitute(config.report_path, axes[a].name, value);
      config.agents_path = substitute(config.agents_path, axes[a].name, value);
      if (axes[a].name == "k") config.k = std::stoll(value);
      if (axes[a].name == "seed") config.seed = std::stoull(value);
    }
    std::string status = "ok";
    RunReport report;
    try {
      report = run(config);
      if (!report.certificates_ok) status = "cert_fail";
    } catch (const std::exception& e) {
      std::string what = e.what();
      std::replace(what.begin(), what.end(), ',', ';');
      std::replace(what.begin(), what.end(), '\n', ' ');
      status = "error: " + what;
    }
    csv_out << status;
    for (const std::string& value : cell) csv_out << "," << value;
    csv_out << "," << report.n << "," << report.k << "," << report.steps << ","
            << fmt(report.y_cost.total) << "," << fmt(report.x_cost.total) << ","
            << fmt(report.collective_cost.total) << "," << fmt(report.opt) << ","
            << fmt(report.ratio) << "," << fmt(report.adjusted_ratio) << ","
            << fmt(report.initial_potential) << "," << report.dominance_violations << ","
            << report.descent_violations << "," << fmt(report.worst_descent_slack) << ","
            << fmt(report.nc_worst_slack) << "," << (report.certificates_ok ? 1 : 0) << "\n";

    std::size_t a = axes.size();
    for (; a > 0; --a) {
      if (++index[a - 1] < axes[a - 1].values.size()) break;
      index[a - 1] = 0;
    }
    if (a == 0) break;
  }
}

}  // namespace mts
