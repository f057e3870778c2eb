#pragma once

// Geometry of the complex Grassmannian G_n(C^{m+n}) in the chart of the big
// cell: a point is the row space of the n x (n+m) matrix [1_n | Z].

#include <cstddef>
#include <vector>

#include "grassphase/mat_core.hpp"

namespace gphase {

/// A point of G_n(C^{m+n}) given by its n x m chart matrix.
class GrassmannPoint {
 public:
  /// Throws DimensionError on an empty shape, DomainError on non-finite entries.
  explicit GrassmannPoint(ComplexMatrix z);

  static GrassmannPoint origin(std::size_t n, std::size_t m);

  std::size_t n() const noexcept { return z_.rows(); }
  std::size_t m() const noexcept { return z_.cols(); }
  const ComplexMatrix& z() const noexcept { return z_; }

  bool same_shape(const GrassmannPoint& other) const noexcept {
    return n() == other.n() && m() == other.m();
  }

 private:
  ComplexMatrix z_;
};

/// Linear fractional map Z -> (aZ + b)(cZ + d)^{-1}; blocks are n x n, n x m,
/// m x n and m x m. Equality is projective (blocks up to a common scalar).
struct MoebiusMap {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix d;

  static MoebiusMap identity(std::size_t n, std::size_t m);

  std::size_t n() const noexcept { return a.rows(); }
  std::size_t m() const noexcept { return d.rows(); }

  /// The (n+m) x (n+m) matrix [[a, b], [c, d]].
  ComplexMatrix assembled() const;
};

/// True when the blocks of `x` equal lambda times those of `y` for some
/// nonzero lambda, within `tol` (max-abs entry after rescaling).
bool projectively_equal(const MoebiusMap& x, const MoebiusMap& y, double tol);

/// K(p, q) = det(1_n + Z_q Z_p^+). Antilinear in p, holomorphic in q.
Complex overlap_kernel(const GrassmannPoint& p, const GrassmannPoint& q);

/// arccos(|K(p,q)| / sqrt(K(p,p) K(q,q))), in [0, pi/2].
double cayley_distance(const GrassmannPoint& p, const GrassmannPoint& q);

/// Z(t) = U tan(Sigma t) V^+ for b = U Sigma V^+; the geodesic through the
/// origin with initial velocity b. Throws CutLocusError once sigma_i t
/// reaches pi/2 - 1e-9.
GrassmannPoint geodesic_from_origin(const ComplexMatrix& b, double t);

/// Inverse of geodesic_from_origin at t = 1: U arctan(Sigma_Z) V^+.
ComplexMatrix log_origin(const GrassmannPoint& p);

/// The isometry that sends p to the origin:
/// a = (1+ZZ^+)^{-1/2}, b = -(1+ZZ^+)^{-1/2} Z, c = (1+Z^+Z)^{-1/2} Z^+, d = (1+Z^+Z)^{-1/2}.
MoebiusMap moebius_to_origin(const GrassmannPoint& p);

/// (aZ + b)(cZ + d)^{-1}; ChartExitError when cZ + d is singular.
GrassmannPoint moebius_apply(const MoebiusMap& map, const GrassmannPoint& p);

/// Direct product form of the transport sending z1 to the origin:
/// (1+Z1Z1^+)^{-1/2} (Z - Z1) (1 + Z1^+Z)^{-1} (1+Z1^+Z1)^{1/2}.
GrassmannPoint moebius_to_origin_apply(const GrassmannPoint& z1, const GrassmannPoint& p);

/// Blocks of the inverse of the assembled block matrix.
MoebiusMap moebius_inverse(const MoebiusMap& map);

/// Unique geodesic arc between two points, realized as transport to the
/// origin, a straight origin geodesic, and transport back.
class GeodesicSegment {
 public:
  GeodesicSegment(GrassmannPoint start, GrassmannPoint end, MoebiusMap transport,
                  MoebiusMap inverse_transport, Svd velocity);

  const GrassmannPoint& start() const noexcept { return start_; }
  const GrassmannPoint& end() const noexcept { return end_; }
  /// Sends start() to the origin.
  const MoebiusMap& transport() const noexcept { return transport_; }
  const MoebiusMap& inverse_transport() const noexcept { return inverse_transport_; }

  const ComplexMatrix& velocity_u() const noexcept { return velocity_.u; }
  const std::vector<double>& velocity_sigma() const noexcept { return velocity_.sigma; }
  const ComplexMatrix& velocity_v() const noexcept { return velocity_.v; }
  /// Origin-chart velocity B = U Sigma V^+.
  ComplexMatrix origin_velocity() const;
  double length_param() const noexcept { return 1.0; }

  GrassmannPoint point_at(double t) const;
  ComplexMatrix velocity_at(double t) const;

 private:
  ComplexMatrix origin_point(double t) const;

  GrassmannPoint start_;
  GrassmannPoint end_;
  MoebiusMap transport_;
  MoebiusMap inverse_transport_;
  Svd velocity_;
};

GeodesicSegment geodesic_between(const GrassmannPoint& p, const GrassmannPoint& q);

/// dZ/dt of seg.point_at(t).
ComplexMatrix geodesic_velocity(const GeodesicSegment& seg, double t);

constexpr double kDefaultCollinearTol = 1e-9;

/// After transporting p to the origin with images Z (of q) and Z0 (of r),
/// tests that Z0 Z^+ and Z0^+ Z are both Hermitian within tol.
bool collinear(const GrassmannPoint& p, const GrassmannPoint& q, const GrassmannPoint& r,
               double tol = kDefaultCollinearTol);

/// Kahler form at `at` on chart tangents x, y:
/// (i/2) Tr[x P y^+ Q - y P x^+ Q], P = (1+Z^+Z)^{-1}, Q = (1+ZZ^+)^{-1}.
double kahler_form_eval(const GrassmannPoint& at, const ComplexMatrix& x,
                        const ComplexMatrix& y);

/// Berry connection (i/2) Tr[(dZ Z^+ - Z dZ^+)(1+ZZ^+)^{-1}] on tangent dz.
double berry_connection(const GrassmannPoint& at, const ComplexMatrix& dz);

/// Bundle connection i Tr[dZ Z^+ (1+ZZ^+)^{-1}] on tangent dz; its real part
/// equals the Berry connection, its imaginary part is exact.
Complex bundle_connection(const GrassmannPoint& at, const ComplexMatrix& dz);

}  // namespace gphase
