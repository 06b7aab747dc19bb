#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mts/adversaries.hpp"
#include "mts/collective.hpp"
#include "mts/discretizer.hpp"
#include "mts/harness.hpp"
#include "mts/instance.hpp"
#include "mts/mass.hpp"
#include "mts/metric.hpp"
#include "mts/strategies.hpp"
#include "mts/transport.hpp"

namespace py = pybind11;
using namespace mts;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Metrical task systems: exact optimal transport, the k-agent discretizer, "
            "collective realization, and the experiment pipeline";

  py::class_<MetricSpace>(m, "MetricSpace")
      .def(py::init<std::vector<std::vector<double>>, std::vector<std::string>>(),
           py::arg("dist"), py::arg("labels") = std::vector<std::string>{})
      .def_static("uniform", &MetricSpace::uniform, py::arg("n"))
      .def_static("random", &MetricSpace::random, py::arg("n"), py::arg("seed"))
      .def_static("load", &MetricSpace::load, py::arg("path"))
      .def_static("from_spec", &MetricSpace::from_spec, py::arg("spec"))
      .def_property_readonly("n", &MetricSpace::size)
      .def_property_readonly("diameter", &MetricSpace::diameter)
      .def("distance", &MetricSpace::distance, py::arg("i"), py::arg("j"))
      .def("matrix", &MetricSpace::matrix)
      .def("is_uniform", &MetricSpace::is_uniform)
      .def("save", &MetricSpace::save, py::arg("path"));

  m.def("validate_metric",
        [](const std::vector<std::vector<double>>& dist) -> py::object {
          const auto violation = validate_metric(dist);
          if (violation) return py::str(*violation);
          return py::none();
        },
        py::arg("dist"), "None when the matrix is a metric, else the first violation");

  m.def("repair_shortest_paths", [](std::vector<std::vector<double>> dist) {
    repair_shortest_paths(dist);
    return dist;
  });

  py::class_<MassVector>(m, "MassVector")
      .def(py::init<Units, std::vector<Units>>(), py::arg("units"), py::arg("mass"))
      .def_static("point_mass", &MassVector::point_mass, py::arg("n"), py::arg("point"),
                  py::arg("units") = 1)
      .def_property_readonly("units", &MassVector::units)
      .def_property_readonly("mass", &MassVector::raw)
      .def("fraction", &MassVector::fraction, py::arg("i"))
      .def("fractions", &MassVector::fractions)
      .def("rescaled", &MassVector::rescaled, py::arg("units"))
      .def("__len__", &MassVector::size)
      .def("__eq__", [](const MassVector& a, const MassVector& b) { return a == b; })
      .def("__repr__", &MassVector::to_string);

  py::class_<Coupling>(m, "Coupling")
      .def_readonly("units", &Coupling::units)
      .def_readonly("flow", &Coupling::flow)
      .def("cost", &Coupling::cost, py::arg("metric"));

  m.def("ot",
        [](const MetricSpace& metric, const MassVector& a, const MassVector& b) {
          TransportResult result = ot(metric, a, b);
          return py::make_tuple(result.cost, result.plan);
        },
        py::arg("metric"), py::arg("a"), py::arg("b"),
        "Exact optimal transport: (cost, integral plan)");
  m.def("ot_cost", &ot_cost, py::arg("metric"), py::arg("a"), py::arg("b"));
  m.def("plan_is_optimal", &plan_is_optimal, py::arg("metric"), py::arg("plan"), py::arg("tol"));
  m.def("drain_step",
        [](const MetricSpace& metric, const MassVector& z, const MassVector& y, int source,
           Units alpha_units) {
          DrainResult result = drain_step(metric, z, y, source, alpha_units);
          return py::make_tuple(result.target, result.shifted);
        },
        py::arg("metric"), py::arg("z"), py::arg("y"), py::arg("source"), py::arg("alpha_units"));

  py::class_<CostSequence>(m, "CostSequence")
      .def(py::init([](std::vector<CostVector> steps) {
             CostSequence seq;
             seq.n = steps.empty() ? 0 : static_cast<int>(steps.front().size());
             seq.steps = std::move(steps);
             return seq;
           }),
           py::arg("steps"))
      .def_static("load", &CostSequence::load, py::arg("path"))
      .def("save", &CostSequence::save, py::arg("path"))
      .def_readonly("n", &CostSequence::n)
      .def_readonly("steps", &CostSequence::steps)
      .def("__len__", &CostSequence::length);

  py::class_<IntegralTrajectory>(m, "IntegralTrajectory")
      .def(py::init([](int initial, std::vector<int> states) {
             return IntegralTrajectory{initial, std::move(states)};
           }),
           py::arg("initial"), py::arg("states"))
      .def_readonly("initial", &IntegralTrajectory::initial)
      .def_readonly("states", &IntegralTrajectory::states)
      .def("__len__", &IntegralTrajectory::length);

  py::class_<FractionalTrace>(m, "FractionalTrace")
      .def(py::init([](MassVector initial, std::vector<MassVector> states) {
             return FractionalTrace{std::move(initial), std::move(states)};
           }),
           py::arg("initial"), py::arg("states"))
      .def_readonly("initial", &FractionalTrace::initial)
      .def_readonly("states", &FractionalTrace::states)
      .def_property_readonly("units", &FractionalTrace::units)
      .def("__len__", &FractionalTrace::length);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("total", &CostBreakdown::total)
      .def_readonly("movement", &CostBreakdown::movement)
      .def_readonly("service", &CostBreakdown::service)
      .def("__repr__", [](const CostBreakdown& b) {
        std::ostringstream os;
        os << "CostBreakdown(total=" << b.total << ", movement=" << b.movement
           << ", service=" << b.service << ")";
        return os.str();
      });

  m.def("trajectory_cost", &trajectory_cost, py::arg("metric"), py::arg("trajectory"),
        py::arg("costs"));
  m.def("fractional_cost", &fractional_cost, py::arg("metric"), py::arg("trace"),
        py::arg("costs"));

  py::class_<OfflineOpt>(m, "OfflineOpt")
      .def_readonly("value", &OfflineOpt::value)
      .def_readonly("argmin", &OfflineOpt::argmin);
  m.def("offline_opt", &offline_opt, py::arg("metric"), py::arg("costs"), py::arg("initial"));

  py::class_<FixedCostTotals>(m, "FixedCostTotals")
      .def_readonly("variable_total", &FixedCostTotals::variable_total)
      .def_readonly("fixed_total", &FixedCostTotals::fixed_total);
  m.def("fixed_cost_accounting", &fixed_cost_accounting, py::arg("metric"), py::arg("trace"),
        py::arg("tau"));

  py::class_<FractionalStrategy>(m, "FractionalStrategy")
      .def("step", &FractionalStrategy::step, py::arg("cost_vector"))
      .def_property_readonly("units", &FractionalStrategy::units)
      .def_property_readonly("phase", &FractionalStrategy::phase)
      .def_property_readonly("last_step_was_reset", &FractionalStrategy::last_step_was_reset);
  py::class_<UniformFractionalStrategy, FractionalStrategy>(m, "UniformFractionalStrategy")
      .def(py::init<const MetricSpace&>(), py::arg("metric"), py::keep_alive<1, 2>());
  py::class_<BallsUrnsStrategy, FractionalStrategy>(m, "BallsUrnsStrategy")
      .def(py::init<const MetricSpace&>(), py::arg("metric"), py::keep_alive<1, 2>())
      .def_property_readonly("last_step_relocations", &BallsUrnsStrategy::last_step_relocations)
      .def_property_readonly("total_relocations", &BallsUrnsStrategy::total_relocations);

  py::class_<DeterministicStrategy>(m, "DeterministicStrategy")
      .def_property_readonly("position", &DeterministicStrategy::position)
      .def("step", &DeterministicStrategy::step, py::arg("cost_vector"));
  py::class_<GreedyStrategy, DeterministicStrategy>(m, "GreedyStrategy")
      .def(py::init<const MetricSpace&, int>(), py::arg("metric"), py::arg("initial"),
           py::keep_alive<1, 2>());

  m.def("run_strategy", &run_strategy, py::arg("strategy"), py::arg("costs"), py::arg("initial"));
  m.def("load_trace", &load_trace, py::arg("path"), py::arg("n"));
  m.def("save_trace", &save_trace, py::arg("path"), py::arg("trace"));
  m.def("random_trace", &random_trace, py::arg("n"), py::arg("units"), py::arg("steps"),
        py::arg("initial"), py::arg("seed"));
  m.def("oscillating_trace", &oscillating_trace, py::arg("n"), py::arg("steps"),
        py::arg("initial"), py::arg("a"), py::arg("b"));

  m.def("phase_adversary",
        [](int n, int phases, const std::string& pattern) {
          return phase_adversary(n, phases,
                                 pattern == "worst-last" ? PhasePattern::kWorstLast
                                                         : PhasePattern::kRoundRobin);
        },
        py::arg("n"), py::arg("phases"), py::arg("pattern") = "round-robin");
  m.def("cruel_adversary", &cruel_adversary, py::arg("metric"), py::arg("algorithm"),
        py::arg("steps"), py::arg("magnitude") = 1.0);
  m.def("split_at_saturation", &split_at_saturation, py::arg("costs"));
  m.def("random_costs", &random_costs, py::arg("n"), py::arg("steps"), py::arg("seed"),
        py::arg("scale") = 1.0);

  py::class_<DiscretizerConfig>(m, "DiscretizerConfig")
      .def(py::init([](Units k, bool require_k_ge_n2, Units enumeration_cap,
                       bool allow_local_search) {
             DiscretizerConfig cfg;
             cfg.k = k;
             cfg.require_k_ge_n2 = require_k_ge_n2;
             cfg.enumeration_cap = enumeration_cap;
             cfg.allow_local_search = allow_local_search;
             return cfg;
           }),
           py::arg("k"), py::arg("require_k_ge_n2") = true,
           py::arg("enumeration_cap") = 1'000'000, py::arg("allow_local_search") = false)
      .def_readwrite("k", &DiscretizerConfig::k)
      .def_readwrite("require_k_ge_n2", &DiscretizerConfig::require_k_ge_n2)
      .def_readwrite("enumeration_cap", &DiscretizerConfig::enumeration_cap)
      .def_readwrite("allow_local_search", &DiscretizerConfig::allow_local_search);

  py::class_<StepCertificate>(m, "StepCertificate")
      .def_readonly("t", &StepCertificate::t)
      .def_readonly("x_prev", &StepCertificate::x_prev)
      .def_readonly("x_new", &StepCertificate::x_new)
      .def_readonly("y_new", &StepCertificate::y_new)
      .def_readonly("objective", &StepCertificate::objective)
      .def_readonly("potential_before", &StepCertificate::potential_before)
      .def_readonly("potential_after", &StepCertificate::potential_after)
      .def_readonly("movement", &StepCertificate::movement)
      .def_readonly("dominance_ok", &StepCertificate::dominance_ok)
      .def_readonly("descent_slack", &StepCertificate::descent_slack);

  m.def("enumerate_configurations", &enumerate_configurations, py::arg("n"), py::arg("k"));
  m.def("configuration_count", &configuration_count, py::arg("n"), py::arg("k"));
  m.def("potential", &potential, py::arg("metric"), py::arg("x"), py::arg("y"));
  m.def("select", &mts::select, py::arg("metric"), py::arg("config"), py::arg("x_prev"),
        py::arg("y_t"));
  m.def("select_initial", &select_initial, py::arg("metric"), py::arg("config"), py::arg("y0"));
  m.def("verify_necessary_condition", &verify_necessary_condition, py::arg("metric"),
        py::arg("config"), py::arg("x_t"), py::arg("y_t"));

  py::class_<DiscretizeResult>(m, "DiscretizeResult")
      .def_readonly("x_trace", &DiscretizeResult::x_trace)
      .def_readonly("certificates", &DiscretizeResult::certificates)
      .def_readonly("initial_potential", &DiscretizeResult::initial_potential)
      .def_readonly("movement_x", &DiscretizeResult::movement_x)
      .def_readonly("movement_y", &DiscretizeResult::movement_y)
      .def_readonly("all_dominance_ok", &DiscretizeResult::all_dominance_ok)
      .def_readonly("worst_descent_slack", &DiscretizeResult::worst_descent_slack)
      .def_readonly("movement_bound_slack", &DiscretizeResult::movement_bound_slack);
  m.def("discretize", &discretize, py::arg("metric"), py::arg("config"), py::arg("y_trace"));

  py::class_<AgentAssignment>(m, "AgentAssignment")
      .def_readonly("positions", &AgentAssignment::positions)
      .def("counts", &AgentAssignment::counts, py::arg("n"));
  m.def("initial_assignment", &initial_assignment, py::arg("x0"));

  py::class_<AgentMove>(m, "AgentMove")
      .def_readonly("agent", &AgentMove::agent)
      .def_readonly("from_point", &AgentMove::from)
      .def_readonly("to_point", &AgentMove::to);
  py::class_<ReassignResult>(m, "ReassignResult")
      .def_readonly("next", &ReassignResult::next)
      .def_readonly("moves", &ReassignResult::moves);
  m.def("reassign", &reassign, py::arg("metric"), py::arg("assignment"), py::arg("x_prev"),
        py::arg("x_next"));

  py::class_<CollectiveRun>(m, "CollectiveRun")
      .def_readonly("agents", &CollectiveRun::agents)
      .def_readonly("per_agent", &CollectiveRun::per_agent)
      .def_readonly("average", &CollectiveRun::average);
  m.def("realize_collective", &realize_collective, py::arg("metric"), py::arg("x_trace"),
        py::arg("costs"));
  m.def("sample_branch", &sample_branch, py::arg("run"), py::arg("seed"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_static("load", &RunConfig::load, py::arg("path"))
      .def_readwrite("metric_spec", &RunConfig::metric_spec)
      .def_readwrite("cost_spec", &RunConfig::cost_spec)
      .def_readwrite("strategy_spec", &RunConfig::strategy_spec)
      .def_readwrite("k", &RunConfig::k)
      .def_readwrite("initial", &RunConfig::initial)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("split", &RunConfig::split)
      .def_readwrite("verify_nc", &RunConfig::verify_nc)
      .def_readwrite("tau", &RunConfig::tau)
      .def_readwrite("allow_k_below_n2", &RunConfig::allow_k_below_n2)
      .def_readwrite("enumeration_cap", &RunConfig::enumeration_cap)
      .def_readwrite("trace_path", &RunConfig::trace_path)
      .def_readwrite("report_path", &RunConfig::report_path)
      .def_readwrite("agents_path", &RunConfig::agents_path);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("n", &RunReport::n)
      .def_readonly("k", &RunReport::k)
      .def_readonly("steps", &RunReport::steps)
      .def_readonly("beta", &RunReport::beta)
      .def_readonly("y_cost", &RunReport::y_cost)
      .def_readonly("x_cost", &RunReport::x_cost)
      .def_readonly("collective_cost", &RunReport::collective_cost)
      .def_readonly("opt", &RunReport::opt)
      .def_readonly("initial_potential", &RunReport::initial_potential)
      .def_readonly("ratio", &RunReport::ratio)
      .def_readonly("adjusted_ratio", &RunReport::adjusted_ratio)
      .def_readonly("dominance_violations", &RunReport::dominance_violations)
      .def_readonly("descent_violations", &RunReport::descent_violations)
      .def_readonly("worst_descent_slack", &RunReport::worst_descent_slack)
      .def_readonly("movement_bound_ok", &RunReport::movement_bound_ok)
      .def_readonly("service_bound_ok", &RunReport::service_bound_ok)
      .def_readonly("collective_identity_ok", &RunReport::collective_identity_ok)
      .def_readonly("nc_checked", &RunReport::nc_checked)
      .def_readonly("nc_worst_slack", &RunReport::nc_worst_slack)
      .def_readonly("tau", &RunReport::tau)
      .def_readonly("fixed", &RunReport::fixed)
      .def_readonly("fixed_ok", &RunReport::fixed_ok)
      .def_readonly("certificates_ok", &RunReport::certificates_ok)
      .def("fields", [](const RunReport& r) {
        py::dict d;
        for (const auto& [key, value] : r.to_fields()) d[py::str(key)] = value;
        return d;
      });
  m.def("run", &mts::run, py::arg("config"));

  m.def("verify_trace",
        [](const std::string& path, bool check_necessary_condition) {
          std::ostringstream diag;
          const VerifyReport report = verify_trace(path, diag, check_necessary_condition);
          return py::make_tuple(report.all_ok(), diag.str());
        },
        py::arg("path"), py::arg("check_necessary_condition") = false,
        "Recompute all certificates of a stored trace: (all_ok, diagnostics)");
}
