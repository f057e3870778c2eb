#pragma once

// Symplectic area of geodesic triangles by quadrature over geodesic fans, and
// connection line integrals around the triangle loop.

#include <complex>

#include "grassphase/grassmann.hpp"
#include "grassphase/mat_core.hpp"

namespace gphase {

struct QuadratureSpec {
  int order = 32;         // Gauss-Legendre nodes per axis
  double fd_step = 1e-5;  // step of the 4th-order central difference in s

  /// Throws DomainError unless order >= 2 and fd_step in (1e-8, 1e-3).
  void validate() const;
};

/// Surface swept by geodesics from `apex` to the points of the geodesic arc
/// base: S(s, t) = geodesic_between(apex, base.point_at(s)).point_at(t).
class FanSurface {
 public:
  FanSurface(GrassmannPoint apex, GeodesicSegment base, int apex_index);

  const GrassmannPoint& apex() const noexcept { return apex_; }
  const GeodesicSegment& base() const noexcept { return base_; }
  int apex_index() const noexcept { return apex_index_; }

  /// The ruling through base.point_at(s).
  GeodesicSegment ruling(double s) const;
  GrassmannPoint point(double s, double t) const;

 private:
  GrassmannPoint apex_;
  GeodesicSegment base_;
  int apex_index_;
};

/// Fan with apex and base arc b1 -> b2. Orientation: integrating
/// omega(dS/ds, dS/dt) over this fan equals the integral over the loop
/// apex -> b1 -> b2 with the convention that (0, 1, i) on CP^1 gives -pi/8.
FanSurface fan_surface(const GrassmannPoint& apex, const GrassmannPoint& b1,
                       const GrassmannPoint& b2, int apex_index = 0);

/// Tensor Gauss-Legendre quadrature of omega(dS/ds, dS/dt) over [0,1]^2.
double fan_area(const FanSurface& fan, const QuadratureSpec& spec = {});

/// Symplectic area of the geodesic triangle (x, y, z), fan apex at x.
double surface_area_quad(const GrassmannPoint& x, const GrassmannPoint& y,
                         const GrassmannPoint& z, const QuadratureSpec& spec = {});

enum class Connection { bundle, berry };

struct LoopIntegral {
  double value = 0.0;         // real part of the loop integral
  double imag_residue = 0.0;  // |imaginary part|; zero for the Berry form
};

/// Closed loop x -> y -> z -> x along geodesic arcs, Gauss-Legendre per arc
/// with analytic velocities. Equals 2 * surface_area_quad.
LoopIntegral loop_connection_integral(const GrassmannPoint& x, const GrassmannPoint& y,
                                      const GrassmannPoint& z, Connection which,
                                      int order = 32);

/// exp(2 i * surface_area_quad).
Complex parallel_transport_factor(const GrassmannPoint& x, const GrassmannPoint& y,
                                  const GrassmannPoint& z, const QuadratureSpec& spec = {});

struct DeformationReport {
  double area_apex_x = 0.0;
  double area_apex_y = 0.0;
  double area_apex_z = 0.0;
  double residual = 0.0;      // |area_apex_x - area_apex_y|
  double max_residual = 0.0;  // largest pairwise spread of the three areas
};

/// The same triangle through three fans (apex x over y->z, apex y over
/// z->x, apex z over x->y).
DeformationReport deformation_residual(const GrassmannPoint& x, const GrassmannPoint& y,
                                       const GrassmannPoint& z, const QuadratureSpec& spec = {});

struct SphereCheck {
  double phase = 0.0;             // |2 * closed_form_area|
  double half_solid_angle = 0.0;  // Omega / 2 from the spherical excess
  double residual = 0.0;
};

/// Solid angle of the spherical image of (0, z1, z2) on the unit sphere, by
/// L'Huilier's formula on great-circle sides 2 d_C.
double spherical_triangle_solid_angle(double side_a, double side_b, double side_c);

/// Compares |closed_form_phase| of (0, z1, z2) on CP^1 with Omega / 2.
SphereCheck sphere_solid_angle_check(Complex z1, Complex z2);

/// Integral of omega over the whole CP^1 chart on a polar grid with radial
/// cutoff; tends to pi.
double full_sphere_area(int order = 32, double radial_cutoff = 1e3);

}  // namespace gphase
