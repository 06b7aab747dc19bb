#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mts/harness.hpp"

namespace {

// Exit codes: 0 all certificates pass, 1 certificate failure, 2 usage/IO error.
constexpr int kOk = 0;
constexpr int kCertificateFailure = 1;
constexpr int kUsageError = 2;

int do_run(const std::string& config_path) {
  const mts::RunConfig config = mts::RunConfig::load(config_path);
  const mts::RunReport report = mts::run(config);
  for (const auto& [key, value] : report.to_fields()) std::cout << key << " " << value << "\n";
  return report.certificates_ok ? kOk : kCertificateFailure;
}

int do_verify(const std::string& trace_path, bool nc) {
  const mts::VerifyReport report = mts::verify_trace(trace_path, std::cout, nc);
  return report.all_ok() ? kOk : kCertificateFailure;
}

int do_sweep(const std::string& template_path, const std::vector<std::string>& axis_specs,
             const std::string& out_path) {
  const mts::RunConfig config_template = mts::RunConfig::load(template_path);
  std::vector<mts::SweepAxis> axes;
  for (const std::string& spec : axis_specs) axes.push_back(mts::parse_axis(spec));
  if (out_path.empty()) {
    mts::sweep(config_template, axes, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + out_path);
    mts::sweep(config_template, axes, out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metrical task systems: fractional strategies, the k-agent discretizer, "
               "and per-step certificate checking"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Execute a configured pipeline run");
  run_cmd->add_option("--config", config_path, "Run configuration file")->required();

  std::string trace_path;
  bool verify_nc = false;
  auto* verify_cmd = app.add_subcommand("verify", "Recompute all certificates of a step trace");
  verify_cmd->add_option("trace", trace_path, "Trace file produced by run")->required();
  verify_cmd->add_flag("--nc", verify_nc, "Also rescan the necessary condition (slow)");

  std::string template_path, csv_path;
  std::vector<std::string> axis_specs;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of runs over axis substitutions");
  sweep_cmd->add_option("--template", template_path, "Run configuration template")->required();
  sweep_cmd->add_option("--axis", axis_specs, "Axis, e.g. k=3,9 or seed=1..5");
  sweep_cmd->add_option("--out", csv_path, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) return do_run(config_path);
    if (verify_cmd->parsed()) return do_verify(trace_path, verify_nc);
    if (sweep_cmd->parsed()) return do_sweep(template_path, axis_specs, csv_path);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
