// Command-line check runner: run named verification checks, sweep a numeric
// parameter into CSV, or list the registry.

#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "symcheck/checks.hpp"

namespace {

int do_run(const std::vector<std::string>& ids, const symcheck::CheckParams& base, bool parallel,
           const std::string& json_path) {
  std::vector<std::string> selected = ids;
  if (selected.size() == 1 && selected[0] == "all") selected.clear();
  std::vector<symcheck::CheckReport> reports;
  try {
    reports = symcheck::run_checks(selected, base, parallel);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  int failures = 0;
  for (const auto& r : reports) {
    if (r.status != "pass") ++failures;
    std::cout << std::left << std::setw(32) << r.id << " " << std::setw(6) << r.status
              << " metric " << std::scientific << std::setprecision(3) << r.metric << " tol "
              << r.tolerance << std::defaultfloat;
    if (!r.notes.empty()) std::cout << "  (" << r.notes << ")";
    std::cout << "\n";
  }
  std::cout << reports.size() - failures << "/" << reports.size() << " checks passed\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "usage error: cannot write " << json_path << "\n";
      return 2;
    }
    out << symcheck::reports_to_json(reports, base.seed).dump(2) << "\n";
  }
  return failures == 0 ? 0 : 1;
}

int do_sweep(const std::string& id, const std::string& param, double from, double to, int steps,
             const std::string& csv_path, const symcheck::CheckParams& base) {
  std::vector<double> values;
  for (int i = 0; i < steps; ++i)
    values.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
  std::ofstream out;
  std::ostream* os = &std::cout;
  if (!csv_path.empty()) {
    out.open(csv_path);
    if (!out) {
      std::cerr << "usage error: cannot write " << csv_path << "\n";
      return 2;
    }
    os = &out;
  }
  try {
    symcheck::sweep_check(id, param, values, *os, base);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic verification checks for the symplectic toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // allow the global flags after the subcommand

  symcheck::CheckParams base;
  std::string parallel = "off", json_path;
  app.add_option("--samples", base.samples, "sample count per check")->capture_default_str();
  app.add_option("--seed", base.seed, "run seed")->capture_default_str();
  app.add_option("--tol", base.tol, "tolerance override (default: per check)");
  app.add_option("--json", json_path, "write a JSON report to this path");
  app.add_option("--parallel", parallel, "run checks in a thread pool")
      ->check(CLI::IsMember({"on", "off"}));

  auto* run = app.add_subcommand("run", "run checks by id, or 'all'");
  std::vector<std::string> ids = {"all"};
  run->add_option("ids", ids, "check ids (query parameters allowed, e.g. id?k=0&m=2)");

  auto* sweep = app.add_subcommand("sweep", "sweep a numeric parameter of one check into CSV");
  std::string sweep_id, sweep_param, csv_path;
  double from = 0.0, to = 1.0;
  int steps = 0;
  sweep->add_option("id", sweep_id, "check id")->required();
  sweep->add_option("--param", sweep_param, "parameter name (default: the check's sweep param)");
  sweep->add_option("--from", from, "range start")->required();
  sweep->add_option("--to", to, "range end")->required();
  sweep->add_option("--steps", steps, "number of samples in the range")->required();
  sweep->add_option("--csv", csv_path, "output path (default: stdout)");

  auto* list = app.add_subcommand("list", "list registered checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& d : symcheck::check_registry())
      std::cout << std::left << std::setw(32) << d.id << " " << d.description << "\n";
    std::cout << symcheck::check_registry().size() << " checks registered\n";
    return 0;
  }
  if (run->parsed()) return do_run(ids, base, parallel == "on", json_path);
  if (steps < 0) {
    std::cerr << "usage error: --steps must be nonnegative\n";
    return 2;
  }
  return do_sweep(sweep_id, sweep_param, from, to, steps, csv_path, base);
}
