#include "grassphase/holonomy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "grassphase/coherent.hpp"
#include "grassphase/errors.hpp"
#include "grassphase/quadrature.hpp"

namespace gphase {

namespace {

void require_finite(double v, const char* op) {
  if (!std::isfinite(v)) {
    throw NumericalDomainError(std::string(op) + ": non-finite integrand");
  }
}

GrassmannPoint scalar_point(Complex z) { return GrassmannPoint(ComplexMatrix{{z}}); }

}  // namespace

void QuadratureSpec::validate() const {
  if (order < 2) throw DomainError("QuadratureSpec: order must be at least 2");
  if (!(fd_step > 1e-8 && fd_step < 1e-3)) {
    throw DomainError("QuadratureSpec: fd_step must lie in (1e-8, 1e-3)");
  }
}

// ---------------------------------------------------------------------------

FanSurface::FanSurface(GrassmannPoint apex, GeodesicSegment base, int apex_index)
    : apex_(std::move(apex)), base_(std::move(base)), apex_index_(apex_index) {}

GeodesicSegment FanSurface::ruling(double s) const {
  return geodesic_between(apex_, base_.point_at(s));
}

GrassmannPoint FanSurface::point(double s, double t) const { return ruling(s).point_at(t); }

FanSurface fan_surface(const GrassmannPoint& apex, const GrassmannPoint& b1,
                       const GrassmannPoint& b2, int apex_index) {
  // Construct the two apex rulings up front so an out-of-domain triangle
  // fails here rather than deep inside the quadrature.
  geodesic_between(apex, b1);
  geodesic_between(apex, b2);
  return FanSurface(apex, geodesic_between(b1, b2), apex_index);
}

double fan_area(const FanSurface& fan, const QuadratureSpec& spec) {
  spec.validate();
  const GaussLegendre rule = gauss_legendre_unit(spec.order);
  const double h = spec.fd_step;
  const std::size_t order = rule.nodes.size();
  constexpr std::array<double, 4> kOffsets = {-2.0, -1.0, 1.0, 2.0};
  constexpr std::array<double, 4> kWeights = {1.0, -8.0, 8.0, -1.0};

  std::vector<double> terms;
  terms.reserve(order * order);
  for (std::size_t i = 0; i < order; ++i) {
    const double s = rule.nodes[i];
    const GeodesicSegment center = fan.ruling(s);
    std::array<GeodesicSegment, 4> shifted = {
        fan.ruling(s + kOffsets[0] * h), fan.ruling(s + kOffsets[1] * h),
        fan.ruling(s + kOffsets[2] * h), fan.ruling(s + kOffsets[3] * h)};
    for (std::size_t j = 0; j < order; ++j) {
      const double t = rule.nodes[j];
      const GrassmannPoint at = center.point_at(t);
      ComplexMatrix ds = ComplexMatrix::zeros(at.n(), at.m());
      for (std::size_t k = 0; k < 4; ++k) ds += kWeights[k] * shifted[k].point_at(t).z();
      ds *= 1.0 / (12.0 * h);
      const ComplexMatrix dt = center.velocity_at(t);
      const double w = kahler_form_eval(at, ds, dt);
      require_finite(w, "fan_area");
      terms.push_back(rule.weights[i] * rule.weights[j] * w);
    }
  }
  return pairwise_sum(terms);
}

double surface_area_quad(const GrassmannPoint& x, const GrassmannPoint& y,
                         const GrassmannPoint& z, const QuadratureSpec& spec) {
  return fan_area(fan_surface(x, y, z, 0), spec);
}

// ---------------------------------------------------------------------------

LoopIntegral loop_connection_integral(const GrassmannPoint& x, const GrassmannPoint& y,
                                      const GrassmannPoint& z, Connection which, int order) {
  if (order < 2) throw DomainError("loop_connection_integral: order must be at least 2");
  const GaussLegendre rule = gauss_legendre_unit(order);
  const std::array<GeodesicSegment, 3> arcs = {geodesic_between(x, y), geodesic_between(y, z),
                                               geodesic_between(z, x)};
  std::vector<double> re_terms;
  std::vector<double> im_terms;
  re_terms.reserve(3 * rule.nodes.size());
  im_terms.reserve(3 * rule.nodes.size());
  for (const auto& arc : arcs) {
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double t = rule.nodes[j];
      const GrassmannPoint at = arc.point_at(t);
      const ComplexMatrix dz = arc.velocity_at(t);
      Complex a;
      if (which == Connection::berry) {
        a = berry_connection(at, dz);
      } else {
        a = bundle_connection(at, dz);
      }
      require_finite(a.real(), "loop_connection_integral");
      require_finite(a.imag(), "loop_connection_integral");
      re_terms.push_back(rule.weights[j] * a.real());
      im_terms.push_back(rule.weights[j] * a.imag());
    }
  }
  return LoopIntegral{pairwise_sum(re_terms), std::abs(pairwise_sum(im_terms))};
}

Complex parallel_transport_factor(const GrassmannPoint& x, const GrassmannPoint& y,
                                  const GrassmannPoint& z, const QuadratureSpec& spec) {
  return std::polar(1.0, 2.0 * surface_area_quad(x, y, z, spec));
}

DeformationReport deformation_residual(const GrassmannPoint& x, const GrassmannPoint& y,
                                       const GrassmannPoint& z, const QuadratureSpec& spec) {
  DeformationReport r;
  r.area_apex_x = fan_area(fan_surface(x, y, z, 0), spec);
  r.area_apex_y = fan_area(fan_surface(y, z, x, 1), spec);
  r.area_apex_z = fan_area(fan_surface(z, x, y, 2), spec);
  r.residual = std::abs(r.area_apex_x - r.area_apex_y);
  const auto [lo, hi] = std::minmax({r.area_apex_x, r.area_apex_y, r.area_apex_z});
  r.max_residual = hi - lo;
  return r;
}

// ---------------------------------------------------------------------------

double spherical_triangle_solid_angle(double side_a, double side_b, double side_c) {
  const double s = 0.5 * (side_a + side_b + side_c);
  const double prod = std::tan(0.5 * s) * std::tan(0.5 * (s - side_a)) *
                      std::tan(0.5 * (s - side_b)) * std::tan(0.5 * (s - side_c));
  return 4.0 * std::atan(std::sqrt(std::max(prod, 0.0)));
}

SphereCheck sphere_solid_angle_check(Complex z1, Complex z2) {
  const GrassmannPoint o = GrassmannPoint::origin(1, 1);
  const GrassmannPoint p1 = scalar_point(z1);
  const GrassmannPoint p2 = scalar_point(z2);
  const double a = cayley_distance(p1, p2);
  const double b = cayley_distance(p2, o);
  const double c = cayley_distance(o, p1);
  if (a == 0.0 || b == 0.0 || c == 0.0) {
    throw DomainError("sphere_solid_angle_check: degenerate triangle (coincident vertices)");
  }
  SphereCheck out;
  out.phase = std::abs(2.0 * closed_form_area(p1, p2));
  out.half_solid_angle = 0.5 * spherical_triangle_solid_angle(2.0 * a, 2.0 * b, 2.0 * c);
  out.residual = std::abs(out.phase - out.half_solid_angle);
  return out;
}

double full_sphere_area(int order, double radial_cutoff) {
  if (order < 2) throw DomainError("full_sphere_area: order must be at least 2");
  if (!(radial_cutoff > 1.0)) throw DomainError("full_sphere_area: cutoff must exceed 1");
  const GaussLegendre rule = gauss_legendre_unit(order);
  // Radial panels [0,1], [1,10], [10,100], ... up to the cutoff.
  std::vector<std::pair<double, double>> panels = {{0.0, 1.0}};
  for (double lo = 1.0; lo < radial_cutoff; lo *= 10.0) {
    panels.emplace_back(lo, std::min(lo * 10.0, radial_cutoff));
  }
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> terms;
  for (const auto& [r0, r1] : panels) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = r0 + (r1 - r0) * rule.nodes[i];
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double theta = two_pi * rule.nodes[j];
        const Complex dir = std::polar(1.0, theta);
        const GrassmannPoint at = scalar_point(r * dir);
        const ComplexMatrix d_r{{dir}};
        const ComplexMatrix d_theta{{Complex(0.0, r) * dir}};
        const double w = kahler_form_eval(at, d_r, d_theta);
        terms.push_back((r1 - r0) * two_pi * rule.weights[i] * rule.weights[j] * w);
      }
    }
  }
  return pairwise_sum(terms);
}

}  // namespace gphase
