#pragma once

// JSON job execution behind the gphase tool: single-shot computations and
// seeded verification suites with machine-readable residual reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grassphase/mat_core.hpp"

namespace gphase {

enum class Command {
  overlap,
  distance,
  geodesic,
  triangle,
  area_closed,
  area_quad,
  loop,
  embed,
  verify,
  sphere_check,
};

/// Command name as written on the command line ("area-closed", ...).
std::string_view command_name(Command c);
/// InputError for an unknown name.
Command parse_command(std::string_view name);

struct JobSpec {
  Command command = Command::verify;
  int n = 1;
  int m = 1;
  std::vector<ComplexMatrix> matrices;
  std::uint64_t seed = 42;
  int trials = 200;
  int quad_order = 32;
  double tol = 1e-6;
  std::string suite = "all";
  std::vector<double> ts;  // sample parameters for `geodesic`
  std::optional<std::string> report_path;
};

/// Parses a JobSpec JSON document. Fields absent from the document keep the
/// values already in `base`. Throws InputError; JSON syntax errors carry the
/// byte position.
JobSpec parse_job(std::string_view json_text, JobSpec base = {});

/// Checks shapes and ranges; throws InputError.
void validate_job(const JobSpec& job);

struct RunResult {
  int exit_code = 0;   // 0 ok, 1 check failure or numerical error, 2 input error
  std::string output;  // JSON document, newline terminated
};

/// Executes a job; never throws for library errors, which map onto exit codes.
RunResult run(const JobSpec& job);

// ---------------------------------------------------------------------------
// Verification suites

struct VerifyFailure {
  std::uint64_t seed = 0;
  std::string check;
  double value = 0.0;
  double bound = 0.0;
  std::string error;  // set when the trial raised instead of producing a value
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  int quad_order = 0;
  std::map<std::string, double> max_residuals;
  std::map<std::string, double> bounds;
  std::vector<VerifyFailure> failures;
  std::int64_t wall_time_ms = 0;

  bool passed() const noexcept { return failures.empty(); }
  /// Deterministic JSON body (everything except wall_time_ms).
  std::string body_json() const;
  /// Full JSON including wall_time_ms.
  std::string to_json() const;
};

/// Suite names accepted by run_verify.
const std::vector<std::string>& verify_suite_names();

/// Runs the named suite ("all" runs every check). Trials are drawn per
/// (seed + i); numerical errors inside a trial are recorded as failures.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int trials,
                        int quad_order);

/// Determinant by recursive cofactor expansion (independent of LU).
Complex cofactor_det(const ComplexMatrix& a);

}  // namespace gphase
