#include "grassphase/harness.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

#include <json.hpp>

#include "grassphase/coherent.hpp"
#include "grassphase/embedding.hpp"
#include "grassphase/errors.hpp"
#include "grassphase/grassmann.hpp"
#include "grassphase/holonomy.hpp"

namespace gphase {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::pair<Command, std::string_view>, 10> kCommandNames = {{
    {Command::overlap, "overlap"},
    {Command::distance, "distance"},
    {Command::geodesic, "geodesic"},
    {Command::triangle, "triangle"},
    {Command::area_closed, "area-closed"},
    {Command::area_quad, "area-quad"},
    {Command::loop, "loop"},
    {Command::embed, "embed"},
    {Command::verify, "verify"},
    {Command::sphere_check, "sphere-check"},
}};

json complex_json(Complex v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(complex_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, std::size_t index) {
  const std::string where = "matrices[" + std::to_string(index) + "]";
  if (!j.is_array() || j.empty()) throw InputError(where + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.empty()) throw InputError(where + ": rows must be non-empty arrays");
    if (r == 0) cols = row.size();
    if (row.size() != cols) throw InputError(where + ": ragged rows");
    for (const json& e : row) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InputError(where + ": entries must be [re, im] pairs");
      }
      const Complex v(e[0].get<double>(), e[1].get<double>());
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw InputError(where + ": non-finite entry");
      }
      entries.push_back(v);
    }
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

GrassmannPoint point(const JobSpec& job, std::size_t i) {
  return GrassmannPoint(job.matrices.at(i));
}

void require_count(const JobSpec& job, std::size_t lo, std::size_t hi) {
  const std::size_t k = job.matrices.size();
  if (k < lo || k > hi) {
    throw InputError(std::string(command_name(job.command)) + ": expected " +
                     std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                     " matrices, got " + std::to_string(k));
  }
}

// Two matrices mean the triangle (0, Z, Z'); three are used as given.
std::array<GrassmannPoint, 3> triangle_vertices(const JobSpec& job) {
  require_count(job, 2, 3);
  if (job.matrices.size() == 2) {
    return {GrassmannPoint::origin(static_cast<std::size_t>(job.n),
                                   static_cast<std::size_t>(job.m)),
            point(job, 0), point(job, 1)};
  }
  return {point(job, 0), point(job, 1), point(job, 2)};
}

json header(const JobSpec& job) {
  json j;
  j["command"] = std::string(command_name(job.command));
  j["n"] = job.n;
  j["m"] = job.m;
  return j;
}

RunResult finish(json j, bool ok) {
  j["ok"] = ok;
  return {ok ? 0 : 1, dump(j)};
}

RunResult run_overlap(const JobSpec& job) {
  require_count(job, 2, 2);
  const GrassmannPoint p = point(job, 0);
  const GrassmannPoint q = point(job, 1);
  const Complex k = overlap_kernel(p, q);
  const Complex normalized = normalized_overlap(p, q);
  const double d = cayley_distance(p, q);
  const double residual = std::abs(std::abs(normalized) - std::cos(d));
  json j = header(job);
  j["kernel"] = complex_json(k);
  j["kernel_reverse"] = complex_json(overlap_kernel(q, p));
  j["normalized_overlap"] = complex_json(normalized);
  j["cayley_distance"] = d;
  j["modulus_residual"] = residual;
  return finish(std::move(j), residual <= job.tol);
}

RunResult run_distance(const JobSpec& job) {
  require_count(job, 2, 2);
  json j = header(job);
  j["distance"] = cayley_distance(point(job, 0), point(job, 1));
  return finish(std::move(j), true);
}

RunResult run_geodesic(const JobSpec& job) {
  require_count(job, 1, 2);
  const GrassmannPoint p =
      job.matrices.size() == 2
          ? point(job, 0)
          : GrassmannPoint::origin(static_cast<std::size_t>(job.n),
                                   static_cast<std::size_t>(job.m));
  const GrassmannPoint q = point(job, job.matrices.size() - 1);
  const GeodesicSegment seg = geodesic_between(p, q);
  const std::vector<double> ts =
      job.ts.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : job.ts;
  json samples = json::array();
  for (double t : ts) {
    samples.push_back(json{{"t", t},
                           {"z", matrix_json(seg.point_at(t).z())},
                           {"velocity", matrix_json(seg.velocity_at(t))}});
  }
  const GrassmannPoint mid = seg.point_at(0.5);
  const double midpoint_residual = std::abs(cayley_distance(p, mid) - cayley_distance(mid, q));
  const double endpoint_residual = max_abs_diff(seg.point_at(1.0).z(), q.z());
  json j = header(job);
  j["origin_velocity"] = matrix_json(seg.origin_velocity());
  j["samples"] = samples;
  j["midpoint_residual"] = midpoint_residual;
  j["endpoint_residual"] = endpoint_residual;
  return finish(std::move(j), midpoint_residual <= job.tol && endpoint_residual <= job.tol);
}

RunResult run_triangle(const JobSpec& job) {
  const auto v = triangle_vertices(job);
  const TriangleReport r = triangle_report(v[0], v[1], v[2], job.quad_order);
  json j = header(job);
  j["side_a"] = r.side_a;
  j["side_b"] = r.side_b;
  j["side_c"] = r.side_c;
  j["psi"] = complex_json(r.psi);
  j["psi_abs"] = r.psi_abs;
  j["phase"] = r.phase;
  j["area_closed"] = r.area_closed;
  j["area_quad"] = r.area_quad;
  j["area_loop"] = r.area_loop;
  j["residual_shape"] = r.residual_shape;
  j["residual_phase_area"] = r.residual_phase_area;
  return finish(std::move(j), r.residual_shape <= job.tol && r.residual_phase_area <= job.tol);
}

RunResult run_area_closed(const JobSpec& job) {
  const auto v = triangle_vertices(job);
  const double area = triangle_area_closed(v[0], v[1], v[2]);
  json j = header(job);
  j["area_closed"] = area;
  j["phase_closed"] = phase_of(std::polar(1.0, 2.0 * area));
  return finish(std::move(j), true);
}

RunResult run_area_quad(const JobSpec& job) {
  const auto v = triangle_vertices(job);
  QuadratureSpec spec;
  spec.order = job.quad_order;
  const double quad = surface_area_quad(v[0], v[1], v[2], spec);
  const double closed = triangle_area_closed(v[0], v[1], v[2]);
  json j = header(job);
  j["area_quad"] = quad;
  j["area_closed"] = closed;
  j["residual"] = std::abs(quad - closed);
  return finish(std::move(j), std::abs(quad - closed) <= job.tol);
}

RunResult run_loop(const JobSpec& job) {
  const auto v = triangle_vertices(job);
  QuadratureSpec spec;
  spec.order = job.quad_order;
  const LoopIntegral bundle =
      loop_connection_integral(v[0], v[1], v[2], Connection::bundle, job.quad_order);
  const LoopIntegral berry =
      loop_connection_integral(v[0], v[1], v[2], Connection::berry, job.quad_order);
  const double area = surface_area_quad(v[0], v[1], v[2], spec);
  const Complex q = std::polar(1.0, 2.0 * area);
  json j = header(job);
  j["bundle"] = bundle.value;
  j["bundle_imag_residue"] = bundle.imag_residue;
  j["berry"] = berry.value;
  j["area_quad"] = area;
  j["transport_factor"] = complex_json(q);
  j["stokes_residual"] = std::abs(berry.value - 2.0 * area);
  j["connection_residual"] = std::abs(bundle.value - berry.value);
  const bool ok = std::abs(berry.value - 2.0 * area) <= job.tol &&
                  std::abs(bundle.value - berry.value) <= job.tol;
  return finish(std::move(j), ok);
}

RunResult run_embed(const JobSpec& job) {
  if (job.matrices.empty()) throw InputError("embed: expected at least one matrix");
  json j = header(job);
  json sets = json::array();
  for (const auto& s : plucker_index_sets(static_cast<std::size_t>(job.n),
                                          static_cast<std::size_t>(job.m))) {
    sets.push_back(s);
  }
  j["index_sets"] = sets;
  json points = json::array();
  for (std::size_t i = 0; i < job.matrices.size(); ++i) {
    json coords = json::array();
    for (const auto& c : plucker_embed(point(job, i)).homo) coords.push_back(complex_json(c));
    points.push_back(coords);
  }
  j["points"] = points;
  return finish(std::move(j), true);
}

RunResult run_sphere_check(const JobSpec& job) {
  require_count(job, 2, 2);
  if (job.n != 1 || job.m != 1) throw InputError("sphere-check: requires n = m = 1");
  const SphereCheck sc = sphere_solid_angle_check(job.matrices[0](0, 0), job.matrices[1](0, 0));
  json j = header(job);
  j["phase"] = sc.phase;
  j["half_solid_angle"] = sc.half_solid_angle;
  j["residual"] = sc.residual;
  return finish(std::move(j), sc.residual <= job.tol);
}

RunResult run_verify_job(const JobSpec& job) {
  const VerifyReport report = run_verify(job.suite, job.seed, job.trials, job.quad_order);
  if (job.report_path) {
    std::ofstream out(*job.report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("verify: cannot open report file '" + *job.report_path + "'");
    out << report.body_json();
    if (!out) throw InputError("verify: failed writing report file '" + *job.report_path + "'");
  }
  return {report.passed() ? 0 : 1, report.to_json()};
}

RunResult error_result(int code, const char* kind, const std::string& message,
                       const JobSpec& job) {
  json j;
  j["command"] = std::string(command_name(job.command));
  j["ok"] = false;
  j["error"] = kind;
  j["message"] = message;
  if (code == 1) j["seed"] = job.seed;
  return {code, dump(j)};
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommandNames)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommandNames)
    if (n == name) return cmd;
  throw InputError("unknown command '" + std::string(name) + "'");
}

JobSpec parse_job(std::string_view json_text, JobSpec base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!j.is_object()) throw InputError("job must be a JSON object");
  JobSpec job = std::move(base);
  if (j.contains("command")) job.command = parse_command(field<std::string>(j, "command", ""));
  job.n = field<int>(j, "n", job.n);
  job.m = field<int>(j, "m", job.m);
  job.seed = field<std::uint64_t>(j, "seed", job.seed);
  job.trials = field<int>(j, "trials", job.trials);
  job.quad_order = field<int>(j, "quad_order", job.quad_order);
  job.tol = field<double>(j, "tol", job.tol);
  job.suite = field<std::string>(j, "suite", job.suite);
  job.ts = field<std::vector<double>>(j, "ts", job.ts);
  if (j.contains("report")) job.report_path = field<std::string>(j, "report", "");
  if (j.contains("matrices")) {
    const json& ms = j.at("matrices");
    if (!ms.is_array()) throw InputError("field 'matrices': expected an array");
    job.matrices.clear();
    for (std::size_t i = 0; i < ms.size(); ++i) job.matrices.push_back(matrix_from_json(ms[i], i));
  }
  return job;
}

void validate_job(const JobSpec& job) {
  if (job.n < 1 || job.m < 1) throw InputError("n and m must be positive");
  if (job.trials < 1) throw InputError("trials must be positive");
  if (job.quad_order < 2) throw InputError("quad_order must be at least 2");
  if (!(job.tol > 0.0) || !std::isfinite(job.tol)) throw InputError("tol must be positive");
  for (std::size_t i = 0; i < job.matrices.size(); ++i) {
    const auto& a = job.matrices[i];
    if (a.rows() != static_cast<std::size_t>(job.n) ||
        a.cols() != static_cast<std::size_t>(job.m)) {
      throw InputError("matrices[" + std::to_string(i) + "] has shape " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                       ", expected " + std::to_string(job.n) + "x" + std::to_string(job.m));
    }
  }
  if (job.command == Command::embed &&
      static_cast<std::size_t>(job.n + job.m) > kMaxEmbeddingDimension) {
    throw InputError("embed: m + n must not exceed 10");
  }
}

RunResult run(const JobSpec& job) {
  try {
    validate_job(job);
    switch (job.command) {
      case Command::overlap: return run_overlap(job);
      case Command::distance: return run_distance(job);
      case Command::geodesic: return run_geodesic(job);
      case Command::triangle: return run_triangle(job);
      case Command::area_closed: return run_area_closed(job);
      case Command::area_quad: return run_area_quad(job);
      case Command::loop: return run_loop(job);
      case Command::embed: return run_embed(job);
      case Command::verify: return run_verify_job(job);
      case Command::sphere_check: return run_sphere_check(job);
    }
    throw InputError("unhandled command");
  } catch (const InputError& e) {
    return error_result(2, "input", e.what(), job);
  } catch (const DimensionError& e) {
    return error_result(2, "dimension", e.what(), job);
  } catch (const CutLocusError& e) {
    return error_result(1, "cut-locus", e.what(), job);
  } catch (const SingularityError& e) {
    return error_result(1, "singularity", e.what(), job);
  } catch (const ChartExitError& e) {
    return error_result(1, "chart-exit", e.what(), job);
  } catch (const UndefinedPhaseError& e) {
    return error_result(1, "undefined-phase", e.what(), job);
  } catch (const DomainError& e) {
    return error_result(1, "domain", e.what(), job);
  } catch (const Error& e) {
    return error_result(1, "numerical", e.what(), job);
  }
}

}  // namespace gphase
