#pragma once

// Plucker embedding of G_n(C^{m+n}) into CP^N and Fubini-Study two- and
// three-point functions. Inner products are antilinear in the first slot.

#include <cstddef>
#include <vector>

#include "grassphase/grassmann.hpp"
#include "grassphase/mat_core.hpp"

namespace gphase {

/// Homogeneous coordinates of a point of CP^N; never normalized.
struct ProjectivePoint {
  std::vector<Complex> homo;
};

/// Largest m + n accepted by plucker_embed (N + 1 <= 252).
constexpr std::size_t kMaxEmbeddingDimension = 10;

/// Column subsets of size n from {0, ..., n+m-1} in lexicographic order; the
/// first subset is {0, ..., n-1}.
std::vector<std::vector<std::size_t>> plucker_index_sets(std::size_t n, std::size_t m);

/// n x n minors of [1_n | Z] in plucker_index_sets order.
ProjectivePoint plucker_embed(const GrassmannPoint& p);

/// sum conj(a_i) b_i
Complex hermitian_inner(const ProjectivePoint& a, const ProjectivePoint& b);

/// |<a,b>| / (|a| |b|), the cosine of the Cayley distance.
double fs_two_point(const ProjectivePoint& a, const ProjectivePoint& b);

/// <a,b><b,c><c,a> / (|a|^2 |b|^2 |c|^2).
Complex cpn_three_point(const ProjectivePoint& a, const ProjectivePoint& b,
                        const ProjectivePoint& c);

/// |Psi_M(x,y,z) - Psi_CPN(i(x), i(y), i(z))|.
double cauchy_residual(const GrassmannPoint& x, const GrassmannPoint& y, const GrassmannPoint& z);

/// Rank-1 test on the 2 x (N+1) stack: max_ij |a_i b_j - a_j b_i| relative to |a| |b|.
bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b, double tol = 1e-10);

}  // namespace gphase
