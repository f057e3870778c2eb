#include "grassphase/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grassphase/errors.hpp"
#include "grassphase/holonomy.hpp"

namespace gphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fold(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2 pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

Complex bargmann_three_point(const GrassmannPoint& x, const GrassmannPoint& y,
                             const GrassmannPoint& z) {
  if (!x.same_shape(y) || !x.same_shape(z)) {
    throw DimensionError("bargmann_three_point: points live on different Grassmannians");
  }
  const Complex num = overlap_kernel(x, y) * overlap_kernel(y, z) * overlap_kernel(z, x);
  const double den =
      overlap_kernel(x, x).real() * overlap_kernel(y, y).real() * overlap_kernel(z, z).real();
  return num / den;
}

double phase_of(Complex v) {
  if (v == Complex{}) throw UndefinedPhaseError("phase_of: the phase of zero is undefined");
  return fold(std::arg(v));
}

double circular_distance(double a, double b) {
  const double d = fold(a - b);
  return std::min(d, kTwoPi - d);
}

TriangleReport shape_invariant_check(const GrassmannPoint& x, const GrassmannPoint& y,
                                     const GrassmannPoint& z) {
  TriangleReport r;
  r.side_a = cayley_distance(y, z);
  r.side_b = cayley_distance(z, x);
  r.side_c = cayley_distance(x, y);
  r.psi = bargmann_three_point(x, y, z);
  r.psi_abs = std::abs(r.psi);
  r.phase = r.psi_abs > 0.0 ? phase_of(r.psi) : 0.0;
  r.residual_shape =
      std::abs(r.psi_abs - std::cos(r.side_a) * std::cos(r.side_b) * std::cos(r.side_c));
  return r;
}

double closed_form_area(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  if (!z1.same_shape(z2)) throw DimensionError("closed_form_area: shape mismatch");
  const Complex k = det(ComplexMatrix::identity(z1.n()) + z1.z() * z2.z().adjoint());
  if (k == Complex{}) {
    throw UndefinedPhaseError("closed_form_area: orthogonal states, area undefined");
  }
  return 0.5 * std::arg(k);
}

double closed_form_phase(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  return fold(2.0 * closed_form_area(z1, z2));
}

Complex normalized_overlap(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  const double n1 = overlap_kernel(z1, z1).real();
  const double n2 = overlap_kernel(z2, z2).real();
  return overlap_kernel(z2, z1) / std::sqrt(n1 * n2);
}

double triangle_area_closed(const GrassmannPoint& x, const GrassmannPoint& y,
                            const GrassmannPoint& z) {
  const MoebiusMap g = moebius_to_origin(x);
  return closed_form_area(moebius_apply(g, y), moebius_apply(g, z));
}

TriangleReport triangle_report(const GrassmannPoint& x, const GrassmannPoint& y,
                               const GrassmannPoint& z, int quad_order) {
  TriangleReport r = shape_invariant_check(x, y, z);
  QuadratureSpec spec;
  spec.order = quad_order;
  r.area_quad = surface_area_quad(x, y, z, spec);
  r.area_loop = 0.5 * loop_connection_integral(x, y, z, Connection::berry, quad_order).value;
  if (r.psi_abs == 0.0) {
    throw UndefinedPhaseError("triangle_report: a pair of orthogonal states has no phase");
  }
  r.area_closed = triangle_area_closed(x, y, z);
  r.residual_phase_area = circular_distance(r.phase, -2.0 * r.area_quad);
  return r;
}

}  // namespace gphase
