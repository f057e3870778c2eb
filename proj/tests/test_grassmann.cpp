#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "grassphase/errors.hpp"
#include "grassphase/grassmann.hpp"
#include "grassphase/random.hpp"
#include "test_support.hpp"

namespace gphase {
namespace {

using testing::cauchy_binet_kernel;
using testing::rel_err;

constexpr double kPi = std::numbers::pi;

GrassmannPoint scalar_point(Complex z) { return GrassmannPoint(ComplexMatrix{{z}}); }

ComplexMatrix one_plus_zzh(const ComplexMatrix& z) {
  return ComplexMatrix::identity(z.rows()) + z * z.adjoint();
}

struct Shape {
  std::size_t n;
  std::size_t m;
};

constexpr Shape kShapes[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 2}};

TEST(GrassmannPoint, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(GrassmannPoint(ComplexMatrix(0, 2)), DimensionError);
  ComplexMatrix bad(1, 1);
  bad(0, 0) = Complex(INFINITY, 0.0);
  EXPECT_THROW(GrassmannPoint(std::move(bad)), DomainError);
}

TEST(OverlapKernel, OriginGivesOne) {
  Rng rng(1);
  const GrassmannPoint q = random_point(2, 3, rng);
  EXPECT_EQ(overlap_kernel(GrassmannPoint::origin(2, 3), q), Complex(1.0));
}

TEST(OverlapKernel, ScalarExample) {
  // K(1, i) = 1 + i conj(1)
  const Complex k = overlap_kernel(scalar_point(1.0), scalar_point(Complex(0, 1)));
  EXPECT_NEAR(std::abs(k - Complex(1, 1)), 0.0, 1e-15);
}

TEST(OverlapKernel, MatchesCauchyBinetMinorSum) {
  Rng rng(2);
  for (const Shape s : kShapes) {
    for (int trial = 0; trial < 40; ++trial) {
      const GrassmannPoint p = random_point(s.n, s.m, rng);
      const GrassmannPoint q = random_point(s.n, s.m, rng);
      EXPECT_LT(rel_err(overlap_kernel(p, q), cauchy_binet_kernel(p.z(), q.z())), 1e-12);
    }
  }
}

TEST(OverlapKernel, HermitianSymmetryExact) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const GrassmannPoint p = random_point(2, 2, rng);
    const GrassmannPoint q = random_point(2, 2, rng);
    EXPECT_EQ(overlap_kernel(p, q), std::conj(overlap_kernel(q, p)));
  }
}

TEST(OverlapKernel, DiagonalRealAtLeastOne) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const GrassmannPoint p = random_point(2, 3, rng);
    const Complex k = overlap_kernel(p, p);
    EXPECT_EQ(k.imag(), 0.0);
    EXPECT_GE(k.real(), 1.0);
  }
}

TEST(OverlapKernel, Sylvester) {
  Rng rng(5);
  for (const Shape s : kShapes) {
    for (int trial = 0; trial < 20; ++trial) {
      const GrassmannPoint p = random_point(s.n, s.m, rng);
      const GrassmannPoint q = random_point(s.n, s.m, rng);
      const Complex rhs = det(ComplexMatrix::identity(s.m) + p.z().adjoint() * q.z());
      EXPECT_LT(rel_err(overlap_kernel(p, q), rhs), 1e-10);
    }
  }
}

TEST(OverlapKernel, ShapeMismatch) {
  EXPECT_THROW(overlap_kernel(GrassmannPoint::origin(1, 2), GrassmannPoint::origin(2, 1)),
               DimensionError);
}

TEST(CayleyDistance, Anchors) {
  EXPECT_EQ(cayley_distance(scalar_point(0.3), scalar_point(0.3)), 0.0);
  EXPECT_NEAR(cayley_distance(scalar_point(0.0), scalar_point(1.0)), std::acos(1.0 / std::sqrt(2.0)),
              1e-15);
  EXPECT_NEAR(cayley_distance(scalar_point(0.0), scalar_point(1.0)), kPi / 4.0, 1e-15);
}

TEST(CayleyDistance, SymmetricAndBounded) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const GrassmannPoint p = random_point(2, 2, rng);
    const GrassmannPoint q = random_point(2, 2, rng);
    const double d = cayley_distance(p, q);
    EXPECT_EQ(d, cayley_distance(q, p));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, kPi / 2.0);
  }
}

TEST(CayleyDistance, TriangleInequality) {
  Rng rng(7);
  for (const Shape s : kShapes) {
    for (int trial = 0; trial < 40; ++trial) {
      const GrassmannPoint p = random_point(s.n, s.m, rng);
      const GrassmannPoint q = random_point(s.n, s.m, rng);
      const GrassmannPoint r = random_point(s.n, s.m, rng);
      EXPECT_LE(cayley_distance(p, r), cayley_distance(p, q) + cayley_distance(q, r) + 1e-12);
    }
  }
}

TEST(GeodesicFromOrigin, StartsAtOrigin) {
  Rng rng(8);
  const ComplexMatrix b = random_gaussian_matrix(2, 3, rng);
  EXPECT_EQ(geodesic_from_origin(b, 0.0).z().max_abs(), 0.0);
}

TEST(GeodesicFromOrigin, ScalarTan) {
  EXPECT_NEAR(std::abs(geodesic_from_origin(ComplexMatrix{{0.7}}, 1.0).z()(0, 0) - std::tan(0.7)),
              0.0, 1e-15);
}

TEST(GeodesicFromOrigin, CutLocus) {
  EXPECT_THROW(geodesic_from_origin(ComplexMatrix{{kPi / 2.0}}, 1.0), CutLocusError);
  EXPECT_THROW(geodesic_from_origin(ComplexMatrix{{1.0}}, 2.0), CutLocusError);
}

TEST(GeodesicFromOrigin, MidpointEquidistant) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix b = random_gaussian_matrix(2, 2, rng);
    b *= 1.2 / b.frobenius_norm();
    const GrassmannPoint o = GrassmannPoint::origin(2, 2);
    const GrassmannPoint end = geodesic_from_origin(b, 1.0);
    const GrassmannPoint mid = geodesic_from_origin(b, 0.5);
    EXPECT_NEAR(cayley_distance(o, mid), cayley_distance(mid, end), 1e-9);
  }
}

TEST(LogOrigin, Anchors) {
  EXPECT_EQ(log_origin(GrassmannPoint::origin(2, 2)).max_abs(), 0.0);
  EXPECT_NEAR(log_origin(scalar_point(1.0))(0, 0).real(), kPi / 4.0, 1e-15);
}

TEST(LogOrigin, RoundTrip) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint p = random_point(s.n, s.m, rng, 3.0);
    const GrassmannPoint back = geodesic_from_origin(log_origin(p), 1.0);
    EXPECT_LT(max_abs_diff(back.z(), p.z()), 1e-10);
  }
}

TEST(Moebius, OriginGivesIdentityBlocks) {
  const MoebiusMap g = moebius_to_origin(GrassmannPoint::origin(2, 3));
  const MoebiusMap id = MoebiusMap::identity(2, 3);
  EXPECT_LT(max_abs_diff(g.assembled(), id.assembled()), 1e-15);
}

TEST(Moebius, IdentityLeavesPointsFixed) {
  Rng rng(11);
  const GrassmannPoint p = random_point(2, 3, rng);
  EXPECT_EQ(moebius_apply(MoebiusMap::identity(2, 3), p).z(), p.z());
}

TEST(Moebius, SendsBasePointToOrigin) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint p = random_point(s.n, s.m, rng);
    EXPECT_LT(moebius_apply(moebius_to_origin(p), p).z().max_abs(), 1e-12);
  }
}

TEST(Moebius, BlockMatrixIsUnitary) {
  Rng rng(13);
  const GrassmannPoint p = random_point(2, 3, rng);
  const ComplexMatrix u = moebius_to_origin(p).assembled();
  EXPECT_LT(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(5)), 1e-12);
}

TEST(Moebius, PreservesCayleyDistance) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape s = kShapes[trial % 5];
    const MoebiusMap g = moebius_to_origin(random_point(s.n, s.m, rng));
    const GrassmannPoint p = random_point(s.n, s.m, rng, 0.5);
    const GrassmannPoint q = random_point(s.n, s.m, rng, 0.5);
    EXPECT_NEAR(cayley_distance(moebius_apply(g, p), moebius_apply(g, q)), cayley_distance(p, q),
                1e-10);
  }
}

TEST(Moebius, ProductFormMatchesBlockForm) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint z1 = random_point(s.n, s.m, rng);
    const GrassmannPoint z = random_point(s.n, s.m, rng);
    const GrassmannPoint block = moebius_apply(moebius_to_origin(z1), z);
    EXPECT_LT(max_abs_diff(block.z(), moebius_to_origin_apply(z1, z).z()), 1e-11);
  }
}

TEST(Moebius, InverseOfIdentity) {
  const MoebiusMap inv = moebius_inverse(MoebiusMap::identity(2, 2));
  EXPECT_LT(max_abs_diff(inv.assembled(), ComplexMatrix::identity(4)), 1e-15);
}

TEST(Moebius, InverseSendsOriginBack) {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint p = random_point(s.n, s.m, rng);
    const MoebiusMap inv = moebius_inverse(moebius_to_origin(p));
    EXPECT_LT(max_abs_diff(moebius_apply(inv, GrassmannPoint::origin(s.n, s.m)).z(), p.z()),
              1e-10);
  }
}

TEST(Moebius, ComposeWithInverseIsIdentity) {
  Rng rng(17);
  const MoebiusMap g = moebius_to_origin(random_point(2, 2, rng));
  const MoebiusMap inv = moebius_inverse(g);
  for (int trial = 0; trial < 20; ++trial) {
    const GrassmannPoint p = random_point(2, 2, rng, 0.5);
    EXPECT_LT(max_abs_diff(moebius_apply(inv, moebius_apply(g, p)).z(), p.z()), 1e-10);
  }
}

TEST(Moebius, DoubleInverseProjectivelyEqual) {
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    MoebiusMap g = moebius_to_origin(random_point(2, 3, rng));
    g.a *= Complex(0.0, 2.5);
    g.b *= Complex(0.0, 2.5);
    g.c *= Complex(0.0, 2.5);
    g.d *= Complex(0.0, 2.5);
    EXPECT_TRUE(projectively_equal(moebius_inverse(moebius_inverse(g)), g, 1e-10));
  }
}

TEST(Moebius, ProjectiveEqualityRejectsDifferentMaps) {
  Rng rng(19);
  const MoebiusMap g = moebius_to_origin(random_point(2, 2, rng));
  const MoebiusMap h = moebius_to_origin(random_point(2, 2, rng));
  EXPECT_FALSE(projectively_equal(g, h, 1e-10));
}

TEST(Moebius, SingularDenominatorExitsChart) {
  // c Z + d = 0 at Z = 1 for c = 1, d = -1.
  const MoebiusMap g{ComplexMatrix{{1.0}}, ComplexMatrix{{0.0}}, ComplexMatrix{{1.0}},
                     ComplexMatrix{{-1.0}}};
  EXPECT_THROW(moebius_apply(g, scalar_point(1.0)), ChartExitError);
}

// 1 + Z Z^+ = (A - Z'C)^{-1} (1 + Z'Z'^+) (A^+ - C^+ Z'^+)^{-1}, Z' the image of Z.
TEST(Moebius, NormIdentityCorrectedForm) {
  Rng rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint z1 = random_point(s.n, s.m, rng);
    const GrassmannPoint z = random_point(s.n, s.m, rng);
    const MoebiusMap g = moebius_to_origin(z1);
    const ComplexMatrix zp = moebius_apply(g, z).z();
    const ComplexMatrix left = inverse(g.a - zp * g.c);
    const ComplexMatrix right = inverse(g.a.adjoint() - g.c.adjoint() * zp.adjoint());
    const ComplexMatrix rhs = left * one_plus_zzh(zp) * right;
    EXPECT_LT(max_abs_diff(one_plus_zzh(z.z()), rhs), 1e-10);
  }
}

// The form with (C^+Z'^+ - A^+) in the last factor is off by an overall sign.
TEST(Moebius, NormIdentityPrintedFormHasWrongSign) {
  Rng rng(21);
  const GrassmannPoint z1 = random_point(2, 2, rng);
  const GrassmannPoint z = random_point(2, 2, rng);
  const MoebiusMap g = moebius_to_origin(z1);
  const ComplexMatrix zp = moebius_apply(g, z).z();
  const ComplexMatrix printed = inverse(-(zp * g.c) + g.a) * one_plus_zzh(zp) *
                                inverse(g.c.adjoint() * zp.adjoint() - g.a.adjoint());
  EXPECT_LT(max_abs_diff(one_plus_zzh(z.z()), -printed), 1e-10);
  EXPECT_GT(max_abs_diff(one_plus_zzh(z.z()), printed), 1.0);
}

// dZ = (a - Z c) dW (c W + d)^{-1} for Z = g(W).
TEST(Moebius, DifferentialIdentity) {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Shape s = kShapes[trial % 5];
    const MoebiusMap g = moebius_to_origin(random_point(s.n, s.m, rng));
    const GrassmannPoint w = random_point(s.n, s.m, rng, 0.5);
    const ComplexMatrix dw = random_gaussian_matrix(s.n, s.m, rng);
    const double h = 1e-5;
    auto at = [&](double t) { return moebius_apply(g, GrassmannPoint(w.z() + t * dw)).z(); };
    const ComplexMatrix fd =
        (1.0 / (12.0 * h)) * (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h));
    const ComplexMatrix zw = at(0.0);
    const ComplexMatrix analytic = (g.a - zw * g.c) * dw * inverse(g.c * w.z() + g.d);
    EXPECT_LT(max_abs_diff(fd, analytic), 1e-8);
  }
}

TEST(GeodesicSegment, Endpoints) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint p = random_point(s.n, s.m, rng);
    const GrassmannPoint q = random_point(s.n, s.m, rng);
    const GeodesicSegment seg = geodesic_between(p, q);
    EXPECT_LT(max_abs_diff(seg.point_at(0.0).z(), p.z()), 1e-12);
    EXPECT_LT(max_abs_diff(seg.point_at(1.0).z(), q.z()), 1e-10);
    EXPECT_EQ(seg.length_param(), 1.0);
    for (double sigma : seg.velocity_sigma()) EXPECT_LT(sigma, kPi / 2.0 - 1e-9);
  }
}

TEST(GeodesicSegment, ConstantWhenEndpointsCoincide) {
  Rng rng(24);
  const GrassmannPoint p = random_point(2, 2, rng);
  const GeodesicSegment seg = geodesic_between(p, p);
  EXPECT_LT(geodesic_velocity(seg, 0.3).max_abs(), 1e-12);
  EXPECT_LT(max_abs_diff(seg.point_at(0.7).z(), p.z()), 1e-12);
}

TEST(GeodesicSegment, FromOriginReducesToOriginGeodesic) {
  Rng rng(25);
  const GrassmannPoint q = random_point(2, 3, rng);
  const GeodesicSegment seg = geodesic_between(GrassmannPoint::origin(2, 3), q);
  const ComplexMatrix b = log_origin(q);
  for (double t : {0.25, 0.5, 0.75}) {
    EXPECT_LT(max_abs_diff(seg.point_at(t).z(), geodesic_from_origin(b, t).z()), 1e-12);
  }
}

TEST(GeodesicSegment, MidpointEquidistant) {
  Rng rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint p = random_point(s.n, s.m, rng);
    const GrassmannPoint q = random_point(s.n, s.m, rng);
    const GrassmannPoint mid = geodesic_between(p, q).point_at(0.5);
    EXPECT_NEAR(cayley_distance(p, mid), cayley_distance(mid, q), 1e-9);
    // Additive along geodesics only in rank one, where it is the Fubini-Study distance.
    if (s.n == 1) EXPECT_NEAR(cayley_distance(p, mid), 0.5 * cayley_distance(p, q), 1e-9);
  }
}

TEST(GeodesicVelocity, OriginStartIsB) {
  Rng rng(27);
  const GrassmannPoint q = random_point(2, 2, rng);
  const GeodesicSegment seg = geodesic_between(GrassmannPoint::origin(2, 2), q);
  EXPECT_LT(max_abs_diff(geodesic_velocity(seg, 0.0), log_origin(q)), 1e-12);
}

TEST(GeodesicVelocity, ScalarSecantSquared) {
  const double b = 0.6;
  const GeodesicSegment seg =
      geodesic_between(GrassmannPoint::origin(1, 1), scalar_point(std::tan(b)));
  for (double t : {0.0, 0.3, 0.8, 1.0}) {
    const double sec = 1.0 / std::cos(b * t);
    EXPECT_NEAR(std::abs(geodesic_velocity(seg, t)(0, 0) - b * sec * sec), 0.0, 1e-12);
  }
}

TEST(GeodesicVelocity, MatchesFiniteDifferences) {
  Rng rng(28);
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GeodesicSegment seg =
        geodesic_between(random_point(s.n, s.m, rng), random_point(s.n, s.m, rng));
    for (double t : {0.1, 0.5, 0.9}) {
      const ComplexMatrix fd =
          (1.0 / (12.0 * h)) * (seg.point_at(t - 2 * h).z() - 8.0 * seg.point_at(t - h).z() +
                                8.0 * seg.point_at(t + h).z() - seg.point_at(t + 2 * h).z());
      EXPECT_LT(max_abs_diff(fd, geodesic_velocity(seg, t)), 1e-8);
    }
  }
}

TEST(Collinear, CoincidentPoints) {
  Rng rng(29);
  const GrassmannPoint z = random_point(2, 2, rng);
  EXPECT_TRUE(collinear(GrassmannPoint::origin(2, 2), z, z));
}

TEST(Collinear, PointsOnOneGeodesic) {
  Rng rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const Shape s = kShapes[trial % 5];
    ComplexMatrix b = random_gaussian_matrix(s.n, s.m, rng);
    b *= 1.0 / b.frobenius_norm();
    const GrassmannPoint o = GrassmannPoint::origin(s.n, s.m);
    EXPECT_TRUE(collinear(o, geodesic_from_origin(b, 0.4), geodesic_from_origin(b, 0.9)));
  }
}

TEST(Collinear, SurvivesTransport) {
  Rng rng(31);
  const GeodesicSegment seg = geodesic_between(random_point(2, 2, rng), random_point(2, 2, rng));
  EXPECT_TRUE(collinear(seg.point_at(0.2), seg.point_at(0.5), seg.point_at(0.9)));
}

TEST(Collinear, GenericTriplesAreNot) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint o = GrassmannPoint::origin(s.n, s.m);
    EXPECT_FALSE(collinear(o, random_point(s.n, s.m, rng), random_point(s.n, s.m, rng), 1e-8));
  }
}

TEST(KahlerForm, Antisymmetric) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const GrassmannPoint at = random_point(2, 3, rng);
    const ComplexMatrix x = random_gaussian_matrix(2, 3, rng);
    const ComplexMatrix y = random_gaussian_matrix(2, 3, rng);
    EXPECT_NEAR(kahler_form_eval(at, x, x), 0.0, 1e-14);
    EXPECT_NEAR(kahler_form_eval(at, x, y), -kahler_form_eval(at, y, x), 1e-13);
  }
}

TEST(KahlerForm, OriginFormula) {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix x = random_gaussian_matrix(2, 2, rng);
    const ComplexMatrix y = random_gaussian_matrix(2, 2, rng);
    EXPECT_NEAR(kahler_form_eval(GrassmannPoint::origin(2, 2), x, y),
                -(x * y.adjoint()).trace().imag(), 1e-13);
  }
}

TEST(KahlerForm, ShapeMismatch) {
  EXPECT_THROW(kahler_form_eval(GrassmannPoint::origin(1, 2), ComplexMatrix(1, 1),
                                ComplexMatrix(1, 2)),
               DimensionError);
}

// Exterior derivative of the Berry form against -2 omega, by central
// differences on a small parallelogram spanned by x and y.
TEST(KahlerForm, BerryCurvature) {
  Rng rng(35);
  const double h = 1e-4;
  for (int trial = 0; trial < 30; ++trial) {
    const Shape s = kShapes[trial % 5];
    const GrassmannPoint at = random_point(s.n, s.m, rng);
    const ComplexMatrix x = random_gaussian_matrix(s.n, s.m, rng);
    const ComplexMatrix y = random_gaussian_matrix(s.n, s.m, rng);
    auto shifted = [&](const ComplexMatrix& dir, double t) {
      return GrassmannPoint(at.z() + t * dir);
    };
    const double dx_ay =
        (berry_connection(shifted(x, h), y) - berry_connection(shifted(x, -h), y)) / (2 * h);
    const double dy_ax =
        (berry_connection(shifted(y, h), x) - berry_connection(shifted(y, -h), x)) / (2 * h);
    EXPECT_NEAR(dx_ay - dy_ax, -2.0 * kahler_form_eval(at, x, y), 1e-6);
  }
}

TEST(Connections, BundleRealPartIsBerry) {
  Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const GrassmannPoint at = random_point(2, 2, rng);
    const ComplexMatrix dz = random_gaussian_matrix(2, 2, rng);
    EXPECT_NEAR(bundle_connection(at, dz).real(), berry_connection(at, dz), 1e-13);
  }
}

TEST(Connections, BundleImaginaryPartIsExact) {
  // Im = d (1/2) log det(1 + Z Z^+) along dz.
  Rng rng(37);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const GrassmannPoint at = random_point(2, 3, rng);
    const ComplexMatrix dz = random_gaussian_matrix(2, 3, rng);
    auto potential = [&](double t) {
      const ComplexMatrix z = at.z() + t * dz;
      return 0.5 * std::log(det(one_plus_zzh(z)).real());
    };
    const double fd = (potential(-2 * h) - 8 * potential(-h) + 8 * potential(h) -
                       potential(2 * h)) / (12 * h);
    EXPECT_NEAR(bundle_connection(at, dz).imag(), fd, 1e-8);
  }
}

}  // namespace
}  // namespace gphase
