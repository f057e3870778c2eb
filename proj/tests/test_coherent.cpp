#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "grassphase/coherent.hpp"
#include "grassphase/errors.hpp"
#include "grassphase/random.hpp"

namespace gphase {
namespace {

constexpr double kPi = std::numbers::pi;

GrassmannPoint scalar_point(Complex z) { return GrassmannPoint(ComplexMatrix{{z}}); }

const GrassmannPoint kZero = scalar_point(0.0);
const GrassmannPoint kOne = scalar_point(1.0);
const GrassmannPoint kI = scalar_point(Complex(0.0, 1.0));

TEST(Bargmann, CoincidentTripleIsOne) {
  Rng rng(1);
  const GrassmannPoint x = random_point(2, 2, rng);
  EXPECT_LT(std::abs(bargmann_three_point(x, x, x) - 1.0), 1e-14);
}

TEST(Bargmann, DegenerateTriangleIsRealNonnegative) {
  Rng rng(2);
  const GrassmannPoint x = random_point(2, 3, rng);
  const GrassmannPoint z = random_point(2, 3, rng);
  const Complex psi = bargmann_three_point(x, x, z);
  EXPECT_NEAR(psi.imag(), 0.0, 1e-15);
  EXPECT_GT(psi.real(), 0.0);
  EXPECT_NEAR(psi.real(), std::pow(std::cos(cayley_distance(x, z)), 2), 1e-14);
}

TEST(Bargmann, ProjectiveLineAnchor) {
  EXPECT_LT(std::abs(bargmann_three_point(kZero, kOne, kI) - Complex(0.25, 0.25)), 1e-15);
}

TEST(Bargmann, CyclicInvarianceAndReversalConjugates) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GrassmannPoint x = random_point(2, 2, rng);
    const GrassmannPoint y = random_point(2, 2, rng);
    const GrassmannPoint z = random_point(2, 2, rng);
    const Complex psi = bargmann_three_point(x, y, z);
    EXPECT_LT(std::abs(bargmann_three_point(y, z, x) - psi), 1e-14);
    EXPECT_LT(std::abs(bargmann_three_point(x, z, y) - std::conj(psi)), 1e-14);
  }
}

TEST(Bargmann, ModulusAtMostOne) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const GrassmannPoint x = random_point(1 + trial % 2, 2, rng, 3.0);
    const GrassmannPoint y = random_point(1 + trial % 2, 2, rng, 3.0);
    const GrassmannPoint z = random_point(1 + trial % 2, 2, rng, 3.0);
    EXPECT_LE(std::abs(bargmann_three_point(x, y, z)), 1.0);
  }
}

TEST(Bargmann, MoebiusInvariant) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const GrassmannPoint x = random_point(2, 2, rng, 0.5);
    const GrassmannPoint y = random_point(2, 2, rng, 0.5);
    const GrassmannPoint z = random_point(2, 2, rng, 0.5);
    const MoebiusMap g = moebius_to_origin(random_point(2, 2, rng, 0.5));
    const Complex moved =
        bargmann_three_point(moebius_apply(g, x), moebius_apply(g, y), moebius_apply(g, z));
    EXPECT_LT(std::abs(moved - bargmann_three_point(x, y, z)), 1e-12);
  }
}

TEST(Bargmann, ShapeMismatch) {
  EXPECT_THROW(bargmann_three_point(kZero, kOne, GrassmannPoint::origin(1, 2)), DimensionError);
}

TEST(PhaseOf, Anchors) {
  EXPECT_EQ(phase_of(1.0), 0.0);
  EXPECT_NEAR(phase_of(Complex(0.25, 0.25)), kPi / 4.0, 1e-16);
  EXPECT_NEAR(phase_of(-1.0), kPi, 1e-16);
  EXPECT_NEAR(phase_of(Complex(0.0, -1.0)), 1.5 * kPi, 1e-15);
  EXPECT_THROW(phase_of(0.0), UndefinedPhaseError);
}

TEST(PhaseOf, RangeAndReconstruction) {
  Rng rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const Complex v = rng.complex_normal();
    const double phi = phase_of(v);
    EXPECT_GE(phi, 0.0);
    EXPECT_LT(phi, 2.0 * kPi);
    EXPECT_LT(std::abs(std::polar(std::abs(v), phi) - v), 1e-14 * std::abs(v) * 4);
  }
  // A tiny negative argument must not fold to exactly 2 pi.
  EXPECT_LT(phase_of(Complex(1.0, -1e-300)), 2.0 * kPi);
}

TEST(CircularDistance, Wraps) {
  EXPECT_NEAR(circular_distance(0.1, 2.0 * kPi - 0.1), 0.2, 1e-15);
  EXPECT_NEAR(circular_distance(kPi / 4.0, -kPi / 4.0 + 2.0 * kPi), kPi / 2.0, 1e-15);
  EXPECT_NEAR(circular_distance(0.0, kPi), kPi, 1e-15);
}

TEST(ShapeInvariant, ProjectiveLineAnchor) {
  const TriangleReport r = shape_invariant_check(kZero, kOne, kI);
  EXPECT_NEAR(r.psi_abs, std::sqrt(2.0) / 4.0, 1e-15);
  EXPECT_NEAR(std::pow(std::cos(kPi / 4.0), 3), std::sqrt(2.0) / 4.0, 1e-15);
  EXPECT_LT(r.residual_shape, 1e-15);
  EXPECT_EQ(r.psi_abs, std::abs(r.psi));
}

TEST(ShapeInvariant, CoincidentTriple) {
  Rng rng(7);
  const GrassmannPoint x = random_point(2, 2, rng);
  const TriangleReport r = shape_invariant_check(x, x, x);
  EXPECT_LT(r.residual_shape, 1e-14);
  EXPECT_NEAR(r.psi_abs, 1.0, 1e-14);
}

TEST(ShapeInvariant, RandomTriples) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const TriangleReport r =
        shape_invariant_check(random_point(2, 2, rng), random_point(2, 2, rng),
                              random_point(2, 2, rng));
    EXPECT_LT(r.residual_shape, 1e-10);
    EXPECT_GE(r.residual_shape, 0.0);
  }
}

TEST(ClosedFormArea, Anchors) {
  EXPECT_NEAR(closed_form_area(kOne, kI), -kPi / 8.0, 1e-15);
  EXPECT_EQ(closed_form_area(kOne, kOne), 0.0);
  EXPECT_NEAR(closed_form_area(kI, kOne), kPi / 8.0, 1e-15);
}

TEST(ClosedFormArea, CollinearIsZero) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix b = random_gaussian_matrix(2, 3, rng);
    b *= 1.3 / b.frobenius_norm();
    const GrassmannPoint z1 = geodesic_from_origin(b, 0.3);
    const GrassmannPoint z2 = geodesic_from_origin(b, 0.8);
    EXPECT_LT(std::abs(closed_form_area(z1, z2)), 1e-12);
  }
}

TEST(ClosedFormArea, OrthogonalStatesUndefined) {
  // det(1 + Z1 Z2^+) = 0 for z1 = 1, z2 = -1.
  EXPECT_THROW(closed_form_area(kOne, scalar_point(-1.0)), UndefinedPhaseError);
}

TEST(ClosedFormPhase, Anchors) {
  EXPECT_NEAR(closed_form_phase(kOne, kI), 7.0 * kPi / 4.0, 1e-15);
  EXPECT_EQ(closed_form_phase(kOne, kOne), 0.0);
}

TEST(ClosedFormPhase, EqualsNormalizedOverlapArgument) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const GrassmannPoint z1 = random_point(2, 2, rng);
    const GrassmannPoint z2 = random_point(2, 2, rng);
    EXPECT_LT(circular_distance(closed_form_phase(z1, z2), phase_of(normalized_overlap(z1, z2))),
              1e-12);
  }
}

TEST(ClosedFormPhase, MatchesBargmannWithOriginVertex) {
  // Psi(0, Z1, Z2) carries phase -2 * area.
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const GrassmannPoint z1 = random_point(2, 3, rng);
    const GrassmannPoint z2 = random_point(2, 3, rng);
    const double phase = phase_of(bargmann_three_point(GrassmannPoint::origin(2, 3), z1, z2));
    EXPECT_LT(circular_distance(phase, -2.0 * closed_form_area(z1, z2)), 1e-12);
  }
}

TEST(NormalizedOverlap, ModulusIsCosineOfDistance) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const GrassmannPoint z1 = random_point(2, 2, rng);
    const GrassmannPoint z2 = random_point(2, 2, rng);
    EXPECT_NEAR(std::abs(normalized_overlap(z1, z2)), std::cos(cayley_distance(z1, z2)), 1e-12);
  }
}

TEST(TriangleAreaClosed, AgreesWithOriginFormula) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const GrassmannPoint z1 = random_point(2, 2, rng);
    const GrassmannPoint z2 = random_point(2, 2, rng);
    EXPECT_NEAR(triangle_area_closed(GrassmannPoint::origin(2, 2), z1, z2),
                closed_form_area(z1, z2), 1e-12);
  }
}

TEST(TriangleReport, ProjectiveLineAnchor) {
  const TriangleReport r = triangle_report(kZero, kOne, kI);
  EXPECT_NEAR(r.phase, kPi / 4.0, 1e-12);
  EXPECT_NEAR(r.area_closed, -kPi / 8.0, 1e-12);
  EXPECT_NEAR(r.area_quad, -kPi / 8.0, 1e-6);
  EXPECT_NEAR(r.area_loop, -kPi / 8.0, 1e-6);
  EXPECT_NEAR(r.side_a, kPi / 4.0, 1e-12);
  EXPECT_NEAR(r.side_b, kPi / 4.0, 1e-12);
  EXPECT_NEAR(r.side_c, kPi / 4.0, 1e-12);
  EXPECT_LT(r.residual_phase_area, 1e-6);
}

TEST(TriangleReport, RandomTrianglesConsistent) {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const GrassmannPoint x = random_point(2, 2, rng, 0.5);
    const GrassmannPoint y = random_point(2, 2, rng, 0.5);
    const GrassmannPoint z = random_point(2, 2, rng, 0.5);
    const TriangleReport r = triangle_report(x, y, z);
    EXPECT_LT(r.residual_phase_area, 1e-6);
    EXPECT_NEAR(r.area_closed, r.area_quad, 1e-6);
    EXPECT_NEAR(r.area_loop, r.area_quad, 1e-6);
  }
}

}  // namespace
}  // namespace gphase
