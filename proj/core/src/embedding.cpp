#include "grassphase/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "grassphase/coherent.hpp"
#include "grassphase/errors.hpp"

namespace gphase {

namespace {

constexpr double kZeroVector = 1e-300;

double norm_sq(const ProjectivePoint& a) {
  double s = 0.0;
  for (const auto& x : a.homo) s += std::norm(x);
  return s;
}

void require_nonzero(const ProjectivePoint& a, const char* op) {
  const bool any = std::any_of(a.homo.begin(), a.homo.end(),
                               [](const Complex& x) { return std::abs(x) > kZeroVector; });
  if (!any) throw DomainError(std::string(op) + ": zero homogeneous vector");
}

void require_same_length(const ProjectivePoint& a, const ProjectivePoint& b, const char* op) {
  if (a.homo.size() != b.homo.size()) {
    throw DimensionError(std::string(op) + ": projective points of different dimension");
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> plucker_index_sets(std::size_t n, std::size_t m) {
  if (n + m > kMaxEmbeddingDimension) {
    throw DimensionError("plucker_index_sets: m + n exceeds 10");
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = i;
  const std::size_t total = n + m;
  while (true) {
    out.push_back(current);
    // Advance to the next combination in lexicographic order.
    std::size_t i = n;
    while (i > 0 && current[i - 1] == total - n + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < n; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

ProjectivePoint plucker_embed(const GrassmannPoint& p) {
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  ComplexMatrix frame(n, n + m);
  frame.set_block(0, 0, ComplexMatrix::identity(n));
  frame.set_block(0, n, p.z());
  const auto subsets = plucker_index_sets(n, m);
  ProjectivePoint out;
  out.homo.reserve(subsets.size());
  ComplexMatrix minor(n, n);
  for (const auto& cols : subsets) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) minor(r, c) = frame(r, cols[c]);
    out.homo.push_back(det(minor));
  }
  return out;
}

Complex hermitian_inner(const ProjectivePoint& a, const ProjectivePoint& b) {
  require_same_length(a, b, "hermitian_inner");
  Complex s{};
  for (std::size_t i = 0; i < a.homo.size(); ++i) s += std::conj(a.homo[i]) * b.homo[i];
  return s;
}

double fs_two_point(const ProjectivePoint& a, const ProjectivePoint& b) {
  require_nonzero(a, "fs_two_point");
  require_nonzero(b, "fs_two_point");
  const double v = std::abs(hermitian_inner(a, b)) / std::sqrt(norm_sq(a) * norm_sq(b));
  return std::clamp(v, 0.0, 1.0);
}

Complex cpn_three_point(const ProjectivePoint& a, const ProjectivePoint& b,
                        const ProjectivePoint& c) {
  require_nonzero(a, "cpn_three_point");
  require_nonzero(b, "cpn_three_point");
  require_nonzero(c, "cpn_three_point");
  const Complex num = hermitian_inner(a, b) * hermitian_inner(b, c) * hermitian_inner(c, a);
  return num / (norm_sq(a) * norm_sq(b) * norm_sq(c));
}

double cauchy_residual(const GrassmannPoint& x, const GrassmannPoint& y,
                       const GrassmannPoint& z) {
  const Complex direct = bargmann_three_point(x, y, z);
  const Complex embedded = cpn_three_point(plucker_embed(x), plucker_embed(y), plucker_embed(z));
  return std::abs(direct - embedded);
}

bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b, double tol) {
  require_same_length(a, b, "projectively_equal");
  const double scale = std::sqrt(norm_sq(a) * norm_sq(b));
  if (scale == 0.0) return false;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.homo.size(); ++i)
    for (std::size_t j = i + 1; j < a.homo.size(); ++j)
      worst = std::max(worst, std::abs(a.homo[i] * b.homo[j] - a.homo[j] * b.homo[i]));
  return worst <= tol * scale;
}

}  // namespace gphase
