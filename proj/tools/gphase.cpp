// gphase: coherent-state phases and symplectic areas on complex Grassmannians.
//
//   gphase triangle --input job.json
//   gphase verify --suite all --seed 42 --trials 200 --report report.json
//
// Exit status: 0 success, 1 check failure or numerical error, 2 input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "grassphase/errors.hpp"
#include "grassphase/harness.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gphase::InputError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state phases and symplectic areas of geodesic triangles"};
  app.set_version_flag("--version", "gphase 0.1.0");

  std::string command;
  gphase::JobSpec defaults;
  int n = defaults.n;
  int m = defaults.m;
  std::uint64_t seed = defaults.seed;
  int trials = defaults.trials;
  int quad_order = defaults.quad_order;
  double tol = defaults.tol;
  std::string suite = defaults.suite;
  std::string input;
  std::string report;

  std::string names;
  for (const char* c : {"overlap", "distance", "geodesic", "triangle", "area-closed",
                        "area-quad", "loop", "embed", "verify", "sphere-check"}) {
    names += names.empty() ? c : std::string(", ") + c;
  }
  app.add_option("command", command, "One of: " + names);
  auto* o_n = app.add_option("--n", n, "Subspace dimension n");
  auto* o_m = app.add_option("--m", m, "Codimension m");
  auto* o_seed = app.add_option("--seed", seed, "Master seed for randomized suites");
  auto* o_trials = app.add_option("--trials", trials, "Trials per randomized check");
  auto* o_quad = app.add_option("--quad-order", quad_order, "Gauss-Legendre nodes per axis");
  auto* o_tol = app.add_option("--tol", tol, "Residual tolerance for single-shot commands");
  auto* o_suite = app.add_option("--suite", suite, "Verification suite (verify only)");
  app.add_option("--input", input, "JobSpec JSON file, or - for standard input");
  auto* o_report = app.add_option("--report", report, "Write the verify report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  gphase::JobSpec job;
  try {
    if (!input.empty()) job = gphase::parse_job(read_input(input), job);
    if (!command.empty()) {
      job.command = gphase::parse_command(command);
    } else if (input.empty()) {
      throw gphase::InputError("no command given (and no --input job)");
    }
    if (o_n->count()) job.n = n;
    if (o_m->count()) job.m = m;
    if (o_seed->count()) job.seed = seed;
    if (o_trials->count()) job.trials = trials;
    if (o_quad->count()) job.quad_order = quad_order;
    if (o_tol->count()) job.tol = tol;
    if (o_suite->count()) job.suite = suite;
    if (o_report->count()) job.report_path = report;
  } catch (const gphase::InputError& e) {
    std::cerr << "gphase: " << e.what() << "\n";
    std::cout << "{\n  \"ok\": false,\n  \"error\": \"input\"\n}\n";
    return 2;
  }

  const gphase::RunResult result = gphase::run(job);
  std::cout << result.output;
  if (result.exit_code == 2) std::cerr << "gphase: invalid input (see JSON output)\n";
  return result.exit_code;
}
