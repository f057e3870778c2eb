#include "grassphase/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "grassphase/errors.hpp"

namespace gphase {

namespace {

constexpr double kUniquenessMargin = 1e-9;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_same_shape(const GrassmannPoint& p, const GrassmannPoint& q, const char* op) {
  if (!p.same_shape(q)) {
    std::ostringstream os;
    os << op << ": points live on different Grassmannians (" << p.n() << "x" << p.m()
       << " vs " << q.n() << "x" << q.m() << ")";
    throw DimensionError(os.str());
  }
}

ComplexMatrix inverse_sqrt_of_one_plus(const ComplexMatrix& gram) {
  ComplexMatrix h = ComplexMatrix::identity(gram.rows()) + gram;
  return herm_fun(h, [](double x) { return 1.0 / std::sqrt(x); });
}

ComplexMatrix sqrt_of_one_plus(const ComplexMatrix& gram) {
  ComplexMatrix h = ComplexMatrix::identity(gram.rows()) + gram;
  return herm_fun(h, [](double x) { return std::sqrt(x); });
}

// U diag(f(sigma_i)) V^+ for thin factors.
ComplexMatrix scaled_product(const ComplexMatrix& u, const std::vector<double>& values,
                             const ComplexMatrix& v) {
  ComplexMatrix out(u.rows(), v.rows());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const Complex ui = u(i, k) * values[k];
      for (std::size_t j = 0; j < v.rows(); ++j) out(i, j) += ui * std::conj(v(j, k));
    }
  }
  return out;
}

void guard_uniqueness(const std::vector<double>& sigma, double t, const char* op) {
  for (double s : sigma) {
    if (!(std::abs(s * t) < kHalfPi - kUniquenessMargin)) {
      std::ostringstream os;
      os.precision(17);
      os << op << ": principal angle " << std::abs(s * t)
         << " reaches the cut locus (pi/2 - 1e-9)";
      throw CutLocusError(os.str());
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

GrassmannPoint::GrassmannPoint(ComplexMatrix z) : z_(std::move(z)) {
  if (z_.rows() == 0 || z_.cols() == 0) {
    throw DimensionError("GrassmannPoint: n and m must be positive");
  }
  if (!z_.all_finite()) throw DomainError("GrassmannPoint: chart matrix has non-finite entries");
}

GrassmannPoint GrassmannPoint::origin(std::size_t n, std::size_t m) {
  return GrassmannPoint(ComplexMatrix::zeros(n, m));
}

MoebiusMap MoebiusMap::identity(std::size_t n, std::size_t m) {
  return MoebiusMap{ComplexMatrix::identity(n), ComplexMatrix::zeros(n, m),
                    ComplexMatrix::zeros(m, n), ComplexMatrix::identity(m)};
}

ComplexMatrix MoebiusMap::assembled() const {
  const std::size_t nn = n();
  const std::size_t mm = m();
  ComplexMatrix g(nn + mm, nn + mm);
  g.set_block(0, 0, a);
  g.set_block(0, nn, b);
  g.set_block(nn, 0, c);
  g.set_block(nn, nn, d);
  return g;
}

bool projectively_equal(const MoebiusMap& x, const MoebiusMap& y, double tol) {
  const ComplexMatrix gx = x.assembled();
  const ComplexMatrix gy = y.assembled();
  if (gx.rows() != gy.rows()) return false;
  // Pick the scalar from the largest entry of gy.
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < gy.data().size(); ++i) {
    if (std::abs(gy.data()[i]) > best_mag) {
      best_mag = std::abs(gy.data()[i]);
      best = i;
    }
  }
  if (best_mag == 0.0) return gx.max_abs() <= tol;
  const Complex lambda = gx.data()[best] / gy.data()[best];
  if (lambda == Complex{}) return false;
  return max_abs_diff(gx, lambda * gy) <= tol * std::max(1.0, std::abs(lambda));
}

// ---------------------------------------------------------------------------

Complex overlap_kernel(const GrassmannPoint& p, const GrassmannPoint& q) {
  require_same_shape(p, q, "overlap_kernel");
  // One canonical argument order so that K(q,p) is the exact conjugate of K(p,q).
  const auto pd = p.z().data();
  const auto qd = q.z().data();
  const auto before = [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  const auto mis = std::mismatch(pd.begin(), pd.end(), qd.begin());
  if (mis.first == pd.end()) {
    return det(ComplexMatrix::identity(p.n()) + p.z() * p.z().adjoint()).real();
  }
  if (before(*mis.second, *mis.first)) return std::conj(overlap_kernel(q, p));
  return det(ComplexMatrix::identity(p.n()) + q.z() * p.z().adjoint());
}

double cayley_distance(const GrassmannPoint& p, const GrassmannPoint& q) {
  require_same_shape(p, q, "cayley_distance");
  const double kpp = overlap_kernel(p, p).real();
  const double kqq = overlap_kernel(q, q).real();
  const double ratio = std::abs(overlap_kernel(p, q)) / std::sqrt(kpp * kqq);
  return std::acos(std::clamp(ratio, 0.0, 1.0));
}

GrassmannPoint geodesic_from_origin(const ComplexMatrix& b, double t) {
  const Svd f = svd(b);
  guard_uniqueness(f.sigma, t, "geodesic_from_origin");
  std::vector<double> tans(f.sigma.size());
  for (std::size_t i = 0; i < tans.size(); ++i) tans[i] = std::tan(f.sigma[i] * t);
  return GrassmannPoint(scaled_product(f.u, tans, f.v));
}

ComplexMatrix log_origin(const GrassmannPoint& p) {
  const Svd f = svd(p.z());
  std::vector<double> angles(f.sigma.size());
  for (std::size_t i = 0; i < angles.size(); ++i) angles[i] = std::atan(f.sigma[i]);
  return scaled_product(f.u, angles, f.v);
}

MoebiusMap moebius_to_origin(const GrassmannPoint& p) {
  const ComplexMatrix& z = p.z();
  const ComplexMatrix zh = z.adjoint();
  const ComplexMatrix left = inverse_sqrt_of_one_plus(z * zh);    // n x n
  const ComplexMatrix right = inverse_sqrt_of_one_plus(zh * z);   // m x m
  return MoebiusMap{left, -(left * z), right * zh, right};
}

GrassmannPoint moebius_apply(const MoebiusMap& map, const GrassmannPoint& p) {
  if (map.n() != p.n() || map.m() != p.m()) {
    throw DimensionError("moebius_apply: map and point shapes differ");
  }
  const ComplexMatrix denom = map.c * p.z() + map.d;
  ComplexMatrix denom_inv;
  try {
    denom_inv = inverse(denom);
  } catch (const SingularityError& e) {
    throw ChartExitError(std::string("moebius_apply: image leaves the big cell (") + e.what() +
                         ")");
  }
  ComplexMatrix image = (map.a * p.z() + map.b) * denom_inv;
  if (!image.all_finite()) throw ChartExitError("moebius_apply: non-finite image");
  return GrassmannPoint(std::move(image));
}

GrassmannPoint moebius_to_origin_apply(const GrassmannPoint& z1, const GrassmannPoint& p) {
  if (!z1.same_shape(p)) throw DimensionError("moebius_to_origin_apply: shape mismatch");
  const ComplexMatrix& a = z1.z();
  const ComplexMatrix ah = a.adjoint();
  const ComplexMatrix left = inverse_sqrt_of_one_plus(a * ah);
  const ComplexMatrix right = sqrt_of_one_plus(ah * a);
  ComplexMatrix mid;
  try {
    mid = inverse(ComplexMatrix::identity(p.m()) + ah * p.z());
  } catch (const SingularityError& e) {
    throw ChartExitError(std::string("moebius_to_origin_apply: image leaves the big cell (") +
                         e.what() + ")");
  }
  return GrassmannPoint(left * (p.z() - a) * mid * right);
}

MoebiusMap moebius_inverse(const MoebiusMap& map) {
  const std::size_t n = map.n();
  const std::size_t m = map.m();
  const ComplexMatrix g = inverse(map.assembled());
  return MoebiusMap{g.block(0, 0, n, n), g.block(0, n, n, m), g.block(n, 0, m, n),
                    g.block(n, n, m, m)};
}

// ---------------------------------------------------------------------------

GeodesicSegment::GeodesicSegment(GrassmannPoint start, GrassmannPoint end,
                                 MoebiusMap transport, MoebiusMap inverse_transport,
                                 Svd velocity)
    : start_(std::move(start)),
      end_(std::move(end)),
      transport_(std::move(transport)),
      inverse_transport_(std::move(inverse_transport)),
      velocity_(std::move(velocity)) {}

ComplexMatrix GeodesicSegment::origin_velocity() const {
  return scaled_product(velocity_.u, velocity_.sigma, velocity_.v);
}

ComplexMatrix GeodesicSegment::origin_point(double t) const {
  guard_uniqueness(velocity_.sigma, t, "GeodesicSegment");
  std::vector<double> tans(velocity_.sigma.size());
  for (std::size_t i = 0; i < tans.size(); ++i) tans[i] = std::tan(velocity_.sigma[i] * t);
  return scaled_product(velocity_.u, tans, velocity_.v);
}

GrassmannPoint GeodesicSegment::point_at(double t) const {
  return moebius_apply(inverse_transport_, GrassmannPoint(origin_point(t)));
}

ComplexMatrix GeodesicSegment::velocity_at(double t) const {
  // Z = (aW + b)(cW + d)^{-1}  =>  dZ = (a - Z c) dW (cW + d)^{-1}.
  const ComplexMatrix w = origin_point(t);
  std::vector<double> rates(velocity_.sigma.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double c = std::cos(velocity_.sigma[i] * t);
    rates[i] = velocity_.sigma[i] / (c * c);
  }
  const ComplexMatrix dw = scaled_product(velocity_.u, rates, velocity_.v);
  const MoebiusMap& h = inverse_transport_;
  ComplexMatrix denom_inv;
  try {
    denom_inv = inverse(h.c * w + h.d);
  } catch (const SingularityError& e) {
    throw ChartExitError(std::string("GeodesicSegment: leaves the big cell (") + e.what() + ")");
  }
  const ComplexMatrix z = (h.a * w + h.b) * denom_inv;
  return (h.a - z * h.c) * dw * denom_inv;
}

GeodesicSegment geodesic_between(const GrassmannPoint& p, const GrassmannPoint& q) {
  require_same_shape(p, q, "geodesic_between");
  MoebiusMap to_origin = moebius_to_origin(p);
  const GrassmannPoint image = moebius_apply(to_origin, q);
  Svd f = svd(image.z());
  for (auto& s : f.sigma) s = std::atan(s);
  guard_uniqueness(f.sigma, 1.0, "geodesic_between");
  MoebiusMap back = moebius_inverse(to_origin);
  return GeodesicSegment(p, q, std::move(to_origin), std::move(back), std::move(f));
}

ComplexMatrix geodesic_velocity(const GeodesicSegment& seg, double t) {
  return seg.velocity_at(t);
}

// ---------------------------------------------------------------------------

bool collinear(const GrassmannPoint& p, const GrassmannPoint& q, const GrassmannPoint& r,
               double tol) {
  require_same_shape(p, q, "collinear");
  require_same_shape(p, r, "collinear");
  const MoebiusMap g = moebius_to_origin(p);
  const ComplexMatrix z = moebius_apply(g, q).z();
  const ComplexMatrix z0 = moebius_apply(g, r).z();
  const ComplexMatrix left = z0 * z.adjoint();
  const ComplexMatrix right = z0.adjoint() * z;
  return max_abs_diff(left, left.adjoint()) <= tol && max_abs_diff(right, right.adjoint()) <= tol;
}

double kahler_form_eval(const GrassmannPoint& at, const ComplexMatrix& x,
                        const ComplexMatrix& y) {
  const ComplexMatrix& z = at.z();
  if (x.rows() != z.rows() || x.cols() != z.cols() || y.rows() != z.rows() ||
      y.cols() != z.cols()) {
    throw DimensionError("kahler_form_eval: tangent shape differs from the chart");
  }
  const ComplexMatrix zh = z.adjoint();
  const ComplexMatrix p = inverse(ComplexMatrix::identity(z.cols()) + zh * z);
  const ComplexMatrix q = inverse(ComplexMatrix::identity(z.rows()) + z * zh);
  const Complex t1 = (x * p * y.adjoint() * q).trace();
  const Complex t2 = (y * p * x.adjoint() * q).trace();
  return (Complex(0.0, 0.5) * (t1 - t2)).real();
}

double berry_connection(const GrassmannPoint& at, const ComplexMatrix& dz) {
  const ComplexMatrix& z = at.z();
  if (dz.rows() != z.rows() || dz.cols() != z.cols()) {
    throw DimensionError("berry_connection: tangent shape differs from the chart");
  }
  const ComplexMatrix zh = z.adjoint();
  const ComplexMatrix q = inverse(ComplexMatrix::identity(z.rows()) + z * zh);
  const Complex t = ((dz * zh - z * dz.adjoint()) * q).trace();
  return (Complex(0.0, 0.5) * t).real();
}

Complex bundle_connection(const GrassmannPoint& at, const ComplexMatrix& dz) {
  const ComplexMatrix& z = at.z();
  if (dz.rows() != z.rows() || dz.cols() != z.cols()) {
    throw DimensionError("bundle_connection: tangent shape differs from the chart");
  }
  const ComplexMatrix zh = z.adjoint();
  const ComplexMatrix q = inverse(ComplexMatrix::identity(z.rows()) + z * zh);
  return Complex(0.0, 1.0) * (dz * zh * q).trace();
}

}  // namespace gphase
