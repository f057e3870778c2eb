#pragma once

// Bargmann three-point invariant of Grassmannian coherent states, its phase,
// the cos a cos b cos c shape factorization, and the closed-form symplectic
// area of geodesic triangles with a vertex at the origin.

#include "grassphase/grassmann.hpp"
#include "grassphase/mat_core.hpp"

namespace gphase {

struct TriangleReport {
  double side_a = 0.0;  // d_C(y, z)
  double side_b = 0.0;  // d_C(z, x)
  double side_c = 0.0;  // d_C(x, y)
  Complex psi{};
  double psi_abs = 0.0;
  double phase = 0.0;  // in [0, 2 pi)
  double area_closed = 0.0;
  double area_quad = 0.0;
  double area_loop = 0.0;
  double residual_shape = 0.0;
  double residual_phase_area = 0.0;
};

/// K(x,y) K(y,z) K(z,x) / (K(x,x) K(y,y) K(z,z)).
Complex bargmann_three_point(const GrassmannPoint& x, const GrassmannPoint& y,
                             const GrassmannPoint& z);

/// Argument folded into [0, 2 pi); UndefinedPhaseError for v = 0.
double phase_of(Complex v);

/// Shortest arc between two angles, in [0, pi].
double circular_distance(double a, double b);

/// Sides, psi, |psi|, phase and | |psi| - cos a cos b cos c |.
TriangleReport shape_invariant_check(const GrassmannPoint& x, const GrassmannPoint& y,
                                     const GrassmannPoint& z);

/// Symplectic area of the geodesic triangle (0, z1, z2):
/// (1/4i) log[det(1 + Z1 Z2^+) / det(1 + Z2 Z1^+)] = (1/2) arg det(1 + Z1 Z2^+),
/// principal branch.
double closed_form_area(const GrassmannPoint& z1, const GrassmannPoint& z2);

/// 2 * closed_form_area folded into [0, 2 pi).
double closed_form_phase(const GrassmannPoint& z1, const GrassmannPoint& z2);

/// K(z2, z1) / sqrt(K(z1,z1) K(z2,z2)); modulus cos d_C(z1, z2).
Complex normalized_overlap(const GrassmannPoint& z1, const GrassmannPoint& z2);

/// Closed-form area of an arbitrary triangle: transport x to the origin first.
double triangle_area_closed(const GrassmannPoint& x, const GrassmannPoint& y,
                            const GrassmannPoint& z);

/// Every route at once: shape check, closed form, fan quadrature and the
/// Berry loop integral (area_loop is half the loop integral).
TriangleReport triangle_report(const GrassmannPoint& x, const GrassmannPoint& y,
                               const GrassmannPoint& z, int quad_order = 32);

}  // namespace gphase
