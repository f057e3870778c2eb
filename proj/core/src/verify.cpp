#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grassphase/coherent.hpp"
#include "grassphase/embedding.hpp"
#include "grassphase/errors.hpp"
#include "grassphase/harness.hpp"
#include "grassphase/holonomy.hpp"
#include "grassphase/random.hpp"

namespace gphase {

namespace {

using json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

struct Manifold {
  std::size_t n;
  std::size_t m;
  std::uint64_t tag;
};

// G_1(C^2) = CP^1, G_1(C^3) = CP^2, G_2(C^4).
constexpr std::array<Manifold, 3> kCorpus = {{{1, 1, 0x11}, {1, 2, 0x12}, {2, 2, 0x22}}};

// Stream salts; each check family draws from its own stream.
constexpr std::uint64_t kSaltOriginTriangle = 0x6f726967696e;
constexpr std::uint64_t kSaltFreeTriangle = 0x66726565;
constexpr std::uint64_t kSaltPair = 0x70616972;
constexpr std::uint64_t kSaltCollinear = 0x636f6c6c;
constexpr std::uint64_t kSaltKernel = 0x6b65726e;

constexpr int kMaxRejections = 100;
constexpr int kCollinearSeeds = 100;

struct Triangle {
  GrassmannPoint x;
  GrassmannPoint y;
  GrassmannPoint z;
};

bool in_uniqueness_domain(const GrassmannPoint& x, const GrassmannPoint& y,
                          const GrassmannPoint& z) {
  try {
    geodesic_between(x, y);
    geodesic_between(y, z);
    geodesic_between(z, x);
    geodesic_between(y, x);
    return true;
  } catch (const CutLocusError&) {
    return false;
  } catch (const ChartExitError&) {
    return false;
  }
}

Triangle draw_triangle(Rng& rng, const Manifold& mf, bool origin_vertex) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    GrassmannPoint x = origin_vertex ? GrassmannPoint::origin(mf.n, mf.m)
                                     : random_point(mf.n, mf.m, rng);
    GrassmannPoint y = random_point(mf.n, mf.m, rng);
    GrassmannPoint z = random_point(mf.n, mf.m, rng);
    if (in_uniqueness_domain(x, y, z)) return {std::move(x), std::move(y), std::move(z)};
  }
  throw CutLocusError("draw_triangle: rejection sampling exhausted");
}

// Accumulates per-check maxima and per-trial failures.
class Collector {
 public:
  explicit Collector(VerifyReport& report) : report_(report) {}

  void declare(const std::string& check, double bound) {
    report_.bounds[check] = bound;
    report_.max_residuals.try_emplace(check, 0.0);
  }

  void record(const std::string& check, std::uint64_t seed, double value) {
    const double bound = report_.bounds.at(check);
    double& worst = report_.max_residuals[check];
    if (!(value <= worst)) worst = value;
    if (!(value <= bound)) report_.failures.push_back({seed, check, value, bound, {}});
  }

  void error(const std::string& check, std::uint64_t seed, const std::exception& e) {
    report_.failures.push_back(
        {seed, check, std::numeric_limits<double>::quiet_NaN(), report_.bounds.at(check),
         e.what()});
    report_.max_residuals[check] = std::numeric_limits<double>::quiet_NaN();
  }

  // Runs body, turning library errors into failures of `checks`.
  void guarded(std::initializer_list<std::string> checks, std::uint64_t seed,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      for (const auto& c : checks) error(c, seed, e);
    }
  }

 private:
  VerifyReport& report_;
};

QuadratureSpec spec_for(int quad_order) {
  QuadratureSpec s;
  s.order = quad_order;
  return s;
}

// Phase against fan area, and closed form against fan area, on (0, Z, Z').
void check_phase_area(Collector& out, std::uint64_t seed, int trials, int quad_order) {
  out.declare("phase_area", 1e-6);
  out.declare("closed_vs_quad", 1e-6);
  for (const auto& mf : kCorpus) {
    for (int i = 0; i < trials; ++i) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      out.guarded({"phase_area", "closed_vs_quad"}, s, [&] {
        Rng rng(s, kSaltOriginTriangle ^ mf.tag);
        const Triangle t = draw_triangle(rng, mf, true);
        const double area_quad = surface_area_quad(t.x, t.y, t.z, spec_for(quad_order));
        const double phase = phase_of(bargmann_three_point(t.x, t.y, t.z));
        out.record("phase_area", s, circular_distance(phase, -2.0 * area_quad));
        out.record("closed_vs_quad", s, std::abs(closed_form_area(t.y, t.z) - area_quad));
      });
    }
  }
}

// |Psi| = cos a cos b cos c on arbitrary triangles.
void check_shape(Collector& out, std::uint64_t seed, int trials) {
  out.declare("shape_invariant", 1e-10);
  for (const auto& mf : kCorpus) {
    for (int i = 0; i < trials; ++i) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      out.guarded({"shape_invariant"}, s, [&] {
        Rng rng(s, kSaltFreeTriangle ^ mf.tag);
        const Triangle t = draw_triangle(rng, mf, false);
        out.record("shape_invariant", s, shape_invariant_check(t.x, t.y, t.z).residual_shape);
      });
    }
  }
}

// Plucker route against the kernel route: triangles and pairs.
void check_cauchy(Collector& out, std::uint64_t seed, int trials) {
  out.declare("cauchy_formula", 1e-10);
  out.declare("cauchy_binet", 1e-12);
  for (const auto& mf : kCorpus) {
    for (int i = 0; i < trials; ++i) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      out.guarded({"cauchy_formula"}, s, [&] {
        Rng rng(s, kSaltFreeTriangle ^ mf.tag);
        const Triangle t = draw_triangle(rng, mf, false);
        out.record("cauchy_formula", s, cauchy_residual(t.x, t.y, t.z));
      });
    }
  }
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    out.guarded({"cauchy_binet"}, s, [&] {
      Rng rng(s, kSaltPair);
      const GrassmannPoint p = random_point(2, 2, rng);
      const GrassmannPoint q = random_point(2, 2, rng);
      const Complex k = overlap_kernel(p, q);
      const Complex minors = hermitian_inner(plucker_embed(p), plucker_embed(q));
      out.record("cauchy_binet", s, std::abs(k - minors) / std::abs(k));
    });
  }
}

// Loop integrals against twice the fan area.
void check_stokes(Collector& out, std::uint64_t seed, int trials, int quad_order) {
  out.declare("stokes", 1e-6);
  out.declare("connection_choice", 1e-8);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const Manifold& mf = kCorpus[static_cast<std::size_t>(i) % kCorpus.size()];
    out.guarded({"stokes", "connection_choice"}, s, [&] {
      Rng rng(s, kSaltFreeTriangle ^ mf.tag);
      const Triangle t = draw_triangle(rng, mf, false);
      const double area = surface_area_quad(t.x, t.y, t.z, spec_for(quad_order));
      const LoopIntegral berry = loop_connection_integral(t.x, t.y, t.z, Connection::berry,
                                                          quad_order);
      const LoopIntegral bundle = loop_connection_integral(t.x, t.y, t.z, Connection::bundle,
                                                           quad_order);
      out.record("stokes", s, std::abs(berry.value - 2.0 * area));
      out.record("connection_choice", s, std::abs(bundle.value - berry.value));
    });
  }
}

// The three fans of one triangle.
void check_deformation(Collector& out, std::uint64_t seed, int trials, int quad_order) {
  out.declare("deformation", 1e-6);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const Manifold& mf = kCorpus[static_cast<std::size_t>(i) % kCorpus.size()];
    out.guarded({"deformation"}, s, [&] {
      Rng rng(s, kSaltFreeTriangle ^ mf.tag);
      const Triangle t = draw_triangle(rng, mf, false);
      out.record("deformation", s,
                 deformation_residual(t.x, t.y, t.z, spec_for(quad_order)).max_residual);
    });
  }
}

// CP^1 anchors: (0, 1, i), its solid angle, and the total area.
void check_anchors(Collector& out, std::uint64_t seed, int quad_order) {
  out.declare("anchor_phase", 1e-12);
  out.declare("anchor_area_closed", 1e-12);
  out.declare("anchor_area_quad", 1e-6);
  out.declare("anchor_solid_angle", 1e-8);
  out.declare("anchor_full_sphere", 1e-4);
  const GrassmannPoint o = GrassmannPoint::origin(1, 1);
  const GrassmannPoint one(ComplexMatrix{{1.0}});
  const GrassmannPoint i_unit(ComplexMatrix{{Complex(0.0, 1.0)}});
  out.guarded({"anchor_phase", "anchor_area_closed", "anchor_area_quad"}, seed, [&] {
    const double phase = phase_of(bargmann_three_point(o, one, i_unit));
    out.record("anchor_phase", seed, circular_distance(phase, kPi / 4.0));
    out.record("anchor_area_closed", seed, std::abs(closed_form_area(one, i_unit) + kPi / 8.0));
    out.record("anchor_area_quad", seed,
               std::abs(surface_area_quad(o, one, i_unit, spec_for(quad_order)) + kPi / 8.0));
  });
  out.guarded({"anchor_solid_angle"}, seed, [&] {
    const SphereCheck sc = sphere_solid_angle_check(1.0, Complex(0.0, 1.0));
    out.record("anchor_solid_angle", seed,
               std::max(sc.residual, std::abs(sc.half_solid_angle - kPi / 4.0)));
  });
  out.guarded({"anchor_full_sphere"}, seed, [&] {
    out.record("anchor_full_sphere", seed, std::abs(full_sphere_area(quad_order) - kPi));
  });
}

// Three points on one geodesic.
void check_collinear(Collector& out, std::uint64_t seed, int trials, int quad_order) {
  out.declare("collinear_phase", 1e-8);
  out.declare("collinear_area", 1e-8);
  const int count = std::min(trials, kCollinearSeeds);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const Manifold& mf = kCorpus[static_cast<std::size_t>(i) % kCorpus.size()];
    out.guarded({"collinear_phase", "collinear_area"}, s, [&] {
      Rng rng(s, kSaltCollinear ^ mf.tag);
      const GrassmannPoint base = random_point(mf.n, mf.m, rng);
      ComplexMatrix dir = random_gaussian_matrix(mf.n, mf.m, rng);
      dir *= 1.0 / spectral_norm(dir);
      const MoebiusMap back = moebius_inverse(moebius_to_origin(base));
      std::array<GrassmannPoint, 3> pts = {base, base, base};
      for (auto& p : pts) {
        const double t = 1.4 * (rng.uniform() - 0.5);
        p = moebius_apply(back, geodesic_from_origin(dir, t));
      }
      const double phase = phase_of(bargmann_three_point(pts[0], pts[1], pts[2]));
      out.record("collinear_phase", s, circular_distance(phase, 0.0));
      const double closed = triangle_area_closed(pts[0], pts[1], pts[2]);
      const double quad = surface_area_quad(pts[0], pts[1], pts[2], spec_for(quad_order));
      out.record("collinear_area", s, std::max(std::abs(closed), std::abs(quad)));
    });
  }
}

// Eigen/SVD reconstruction and determinant against cofactors.
void check_kernel(Collector& out, std::uint64_t seed, int trials) {
  out.declare("kernel_eig", 1e-12);
  out.declare("kernel_svd", 1e-12);
  out.declare("kernel_det", 1e-12);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    out.guarded({"kernel_eig", "kernel_svd", "kernel_det"}, s, [&] {
      Rng rng(s, kSaltKernel);
      const std::size_t k = 1 + static_cast<std::size_t>(i % 6);
      const ComplexMatrix h = random_hermitian(k, rng);
      const HermEig e = herm_eig(h);
      const ComplexMatrix rebuilt =
          e.vectors * ComplexMatrix::diagonal(e.eigenvalues) * e.vectors.adjoint();
      out.record("kernel_eig", s,
                 std::max(max_abs_diff(rebuilt, h),
                          max_abs_diff(e.vectors.adjoint() * e.vectors,
                                       ComplexMatrix::identity(k))));

      const std::size_t cols = 1 + static_cast<std::size_t>((i / 6) % 6);
      const ComplexMatrix a = random_gaussian_matrix(k, cols, rng);
      const Svd f = svd(a);
      const std::size_t r = f.sigma.size();
      const ComplexMatrix usv = f.u * ComplexMatrix::diagonal(f.sigma) * f.v.adjoint();
      out.record("kernel_svd", s,
                 std::max({max_abs_diff(usv, a),
                           max_abs_diff(f.u.adjoint() * f.u, ComplexMatrix::identity(r)),
                           max_abs_diff(f.v.adjoint() * f.v, ComplexMatrix::identity(r))}));

      const ComplexMatrix sq = random_gaussian_matrix(k, k, rng);
      const Complex reference = cofactor_det(sq);
      out.record("kernel_det", s, std::abs(det(sq) - reference) / std::abs(reference));
    });
  }
}

// A repeated evaluation is bit-identical.
void check_reproducibility(Collector& out, std::uint64_t seed, int quad_order) {
  out.declare("reproducibility", 0.0);
  out.guarded({"reproducibility"}, seed, [&] {
    auto evaluate = [&] {
      Rng rng(seed, kSaltFreeTriangle ^ kCorpus[2].tag);
      const Triangle t = draw_triangle(rng, kCorpus[2], false);
      return triangle_report(t.x, t.y, t.z, quad_order);
    };
    const TriangleReport a = evaluate();
    const TriangleReport b = evaluate();
    const bool same = a.area_quad == b.area_quad && a.area_loop == b.area_loop &&
                      a.psi == b.psi && a.area_closed == b.area_closed &&
                      a.residual_shape == b.residual_shape;
    out.record("reproducibility", seed, same ? 0.0 : 1.0);
  });
}

json failure_json(const VerifyFailure& f) {
  json j;
  j["seed"] = f.seed;
  j["check"] = f.check;
  j["value"] = f.value;
  j["bound"] = f.bound;
  if (!f.error.empty()) j["error"] = f.error;
  return j;
}

json body(const VerifyReport& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["quad_order"] = r.quad_order;
  j["passed"] = r.passed();
  json residuals = json::object();
  for (const auto& [name, value] : r.max_residuals) {
    residuals[name] = json{{"max", value}, {"bound", r.bounds.at(name)}};
  }
  j["max_residuals"] = residuals;
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(failure_json(f));
  j["failures"] = failures;
  return j;
}

}  // namespace

Complex cofactor_det(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("cofactor_det: expected a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  Complex total{};
  double sign = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = a(r, k);
      }
    }
    total += sign * a(0, c) * cofactor_det(minor);
    sign = -sign;
  }
  return total;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "all",         "phase-area", "shape",  "cauchy", "stokes",
      "deformation", "anchors",    "collinear", "kernel", "reproducibility"};
  return names;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int trials,
                        int quad_order) {
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw InputError("verify: unknown suite '" + suite + "'");
  }
  if (trials < 1) throw InputError("verify: trials must be positive");
  if (quad_order < 2) throw InputError("verify: quad_order must be at least 2");

  const auto started = std::chrono::steady_clock::now();
  VerifyReport report;
  report.suite = suite;
  report.seed = seed;
  report.trials = trials;
  report.quad_order = quad_order;
  Collector out(report);
  const bool all = suite == "all";
  if (all || suite == "phase-area") check_phase_area(out, seed, trials, quad_order);
  if (all || suite == "shape") check_shape(out, seed, trials);
  if (all || suite == "cauchy") check_cauchy(out, seed, trials);
  if (all || suite == "stokes") check_stokes(out, seed, trials, quad_order);
  if (all || suite == "deformation") check_deformation(out, seed, trials, quad_order);
  if (all || suite == "anchors") check_anchors(out, seed, quad_order);
  if (all || suite == "collinear") check_collinear(out, seed, trials, quad_order);
  if (all || suite == "kernel") check_kernel(out, seed, trials);
  if (all || suite == "reproducibility") check_reproducibility(out, seed, quad_order);
  const auto elapsed = std::chrono::steady_clock::now() - started;
  report.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return report;
}

std::string VerifyReport::body_json() const { return body(*this).dump(2) + "\n"; }

std::string VerifyReport::to_json() const {
  json j = body(*this);
  j["wall_time_ms"] = wall_time_ms;
  return j.dump(2) + "\n";
}

}  // namespace gphase
