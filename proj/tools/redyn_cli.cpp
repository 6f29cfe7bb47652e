// Command-line front end. Talks to the library only through the C API.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "redyn/redyn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIncompatible = 1;
constexpr int kExitError = 2;

struct Failure {
  redyn_status status;
};

void check(redyn_status s) {
  if (s != REDYN_OK) throw Failure{s};
}

struct StringDeleter {
  void operator()(char* s) const { redyn_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ModelDeleter {
  void operator()(redyn_model* m) const { redyn_model_destroy(m); }
};
struct ReportDeleter {
  void operator()(redyn_report* r) const { redyn_report_destroy(r); }
};
struct RunDeleter {
  void operator()(redyn_run* r) const { redyn_run_destroy(r); }
};

std::unique_ptr<redyn_model, ModelDeleter> load(const std::string& path) {
  redyn_model* m = nullptr;
  check(redyn_model_load(path.c_str(), &m));
  return std::unique_ptr<redyn_model, ModelDeleter>(m);
}

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
  } else {
    check(redyn_write_file(path.c_str(), (std::string(text) + "\n").c_str()));
  }
}

int cmd_basis(std::size_t n, const std::string& out) {
  char* raw = nullptr;
  check(redyn_basis_json(n, &raw));
  OwnedString json(raw);
  emit(out, json.get());
  return kExitOk;
}

int cmd_evolve(const std::string& model_path, double t_max, std::size_t steps,
               const std::string& out_dir, double tol) {
  auto model = load(model_path);
  redyn_run* raw_run = nullptr;
  check(redyn_run_evolve(model.get(), t_max, steps, tol, &raw_run));
  std::unique_ptr<redyn_run, RunDeleter> run(raw_run);

  char* raw = nullptr;
  check(redyn_run_csv(run.get(), &raw));
  OwnedString csv(raw);
  check(redyn_run_json(run.get(), &raw));
  OwnedString json(raw);

  const std::filesystem::path dir(out_dir);
  check(redyn_write_file((dir / "timeseries.csv").string().c_str(), csv.get()));
  check(redyn_write_file((dir / "report.json").string().c_str(),
                         (std::string(json.get()) + "\n").c_str()));

  double max_delta = 0.0;
  for (std::size_t k = 0; k < redyn_run_record_count(run.get()); ++k) {
    double d = 0.0;
    check(redyn_run_record(run.get(), k, nullptr, &d, nullptr, nullptr, nullptr));
    if (d > max_delta) max_delta = d;
  }
  std::printf("%zu records written to %s (max ||delta rho||_F = %.3e)\n",
              redyn_run_record_count(run.get()), out_dir.c_str(), max_delta);
  return kExitOk;
}

int cmd_analyze(const std::string& model_path, const std::string& out, double tol) {
  auto model = load(model_path);
  redyn_report* raw_report = nullptr;
  check(redyn_model_analyze(model.get(), tol, &raw_report));
  std::unique_ptr<redyn_report, ReportDeleter> report(raw_report);

  char* raw = nullptr;
  check(redyn_report_json(report.get(), &raw));
  OwnedString json(raw);
  emit(out, json.get());

  const bool local = redyn_report_conclusion(report.get()) == REDYN_LOCAL_UNITARY;
  std::fprintf(stderr, "%s (%zu failing probes)\n",
               local ? "LocalUnitary" : "KrausIncompatibleForSomeCorrelation",
               redyn_report_failing_probe_count(report.get()));
  return local ? kExitOk : kExitIncompatible;
}

int cmd_cnot_demo(const std::string& out_dir, std::uint64_t seed, double tol) {
  int ok = 0;
  check(redyn_cnot_demo(out_dir.c_str(), seed, tol, &ok));
  std::printf("CNOT demo written to %s: %s\n", out_dir.c_str(), ok ? "ok" : "FAILED");
  return ok ? kExitOk : kExitIncompatible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced dynamics with initial correlations: Kraus part, inhomogeneous "
               "part and Kraus-compatibility analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol = 1e-10;
  std::uint64_t seed = 1729;
  app.add_option("--tol", tol, "Numerical tolerance")->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();

  std::size_t basis_n = 0;
  std::string basis_out;
  auto* basis = app.add_subcommand("basis", "Dump SU(N) generators and structure constants");
  basis->add_option("N", basis_n, "Level count")->required()->check(CLI::Range(2, 64));
  basis->add_option("--out", basis_out, "Output JSON file (stdout if omitted)");

  std::string evolve_model, evolve_out;
  double t_max = 0.0;
  std::size_t steps = 0;
  auto* evolve = app.add_subcommand("evolve", "Split the reduced map over a time grid");
  evolve->add_option("MODEL", evolve_model, "Model JSON file")->required();
  evolve->add_option("--t-max", t_max, "Final time")->required();
  evolve->add_option("--steps", steps, "Number of grid intervals")
      ->required()
      ->check(CLI::PositiveNumber);
  evolve->add_option("--out", evolve_out, "Output directory")->required();

  std::string analyze_model, analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Kraus-compatibility report (exit 0 = local unitary)");
  analyze->add_option("MODEL", analyze_model, "Model JSON file")->required();
  analyze->add_option("--out", analyze_out, "Output JSON file (stdout if omitted)");

  std::string demo_out;
  auto* demo = app.add_subcommand("cnot-demo", "Reproduce the controlled-NOT worked example");
  demo->add_option("--out", demo_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*basis) return cmd_basis(basis_n, basis_out);
    if (*evolve) return cmd_evolve(evolve_model, t_max, steps, evolve_out, tol);
    if (*analyze) return cmd_analyze(analyze_model, analyze_out, tol);
    if (*demo) return cmd_cnot_demo(demo_out, seed, tol);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error (%s): %s\n", redyn_status_string(f.status), redyn_last_error());
    return kExitError;
  }
  return kExitError;
}
