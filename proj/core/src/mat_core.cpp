#include "grassphase/mat_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "grassphase/errors.hpp"

namespace gphase {

namespace {

constexpr int kJacobiSweepLimit = 64;
constexpr double kJacobiTolerance = 1e-14;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kPivotTolerance = 1e-13;
constexpr double kRankThreshold = 1e-12;
constexpr double kPoleMagnitude = 1e15;

std::string shape_str(const ComplexMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " +
                         shape_str(b));
  }
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw DimensionError(std::string(op) + ": expected a square matrix, got " + shape_str(a));
  }
}

// Modified Gram-Schmidt against the first `count` columns of q, in place on v.
double orthogonalize(const ComplexMatrix& q, std::size_t count, std::vector<Complex>& v) {
  const std::size_t n = v.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count; ++j) {
      Complex proj{};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, j)) * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, j);
    }
  }
  double norm = 0.0;
  for (const auto& x : v) norm += std::norm(x);
  return std::sqrt(norm);
}

Svd tall_svd(const ComplexMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const HermEig gram = herm_eig(a.adjoint() * a);
  const ComplexMatrix av = a * gram.vectors;

  std::vector<double> norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += std::norm(av(i, j));
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  Svd out;
  out.u = ComplexMatrix(rows, cols);
  out.v = ComplexMatrix(cols, cols);
  out.sigma.resize(cols);
  const double cutoff = kRankThreshold * std::max(1.0, cols ? norms[order[0]] : 0.0);

  std::size_t filled = 0;
  std::vector<Complex> col(rows);
  for (std::size_t k = 0; k < cols; ++k) {
    const std::size_t j = order[k];
    for (std::size_t i = 0; i < cols; ++i) out.v(i, k) = gram.vectors(i, j);
    const double sigma = norms[j];
    if (sigma > cutoff) {
      out.sigma[k] = sigma;
      for (std::size_t i = 0; i < rows; ++i) col[i] = av(i, j) / sigma;
      const double nrm = orthogonalize(out.u, filled, col);
      for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = col[i] / nrm;
      ++filled;
      continue;
    }
    out.sigma[k] = 0.0;
    // Complete with the standard basis vector that survives projection best.
    double best = -1.0;
    std::vector<Complex> best_col(rows);
    for (std::size_t e = 0; e < rows; ++e) {
      std::fill(col.begin(), col.end(), Complex{});
      col[e] = 1.0;
      const double nrm = orthogonalize(out.u, filled, col);
      if (nrm > best) {
        best = nrm;
        best_col = col;
      }
    }
    for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = best_col[i] / best;
    ++filled;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: entry count does not match shape");
  }
  if (!all_finite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& x : out.entries_) x = std::conj(x);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& x : entries_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const auto& x : entries_) s += std::norm(x);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block: out of range");
  ComplexMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& src) {
  if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) {
    throw DimensionError("set_block: out of range");
  }
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

ComplexMatrix ComplexMatrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : entries_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: inner dimensions differ (" + shape_str(a) + " * " +
                         shape_str(b) + ")");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Determinant and inverse

Complex det(const ComplexMatrix& a) {
  require_square(a, "det");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  Complex result = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu(r, k)) > best) {
        best = std::abs(lu(r, k));
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      result = -result;
    }
    const Complex pivot = lu(k, k);
    result *= pivot;
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu(r, k) / pivot;
      if (f == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }
  return result;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  const double scale = a.max_abs();
  ComplexMatrix work = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(work(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(work(r, k)) > best) {
        best = std::abs(work(r, k));
        piv = r;
      }
    }
    if (!(best > kPivotTolerance * scale) || scale == 0.0) {
      std::ostringstream os;
      os << "inverse: numerically singular matrix (pivot magnitude " << best << ")";
      throw SingularityError(os.str(), best);
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(k, c), work(piv, c));
        std::swap(inv(k, c), inv(piv, c));
      }
    }
    const Complex rp = 1.0 / work(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      work(k, c) *= rp;
      inv(k, c) *= rp;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      const Complex f = work(r, k);
      if (f == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= f * work(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

HermEig herm_eig(const ComplexMatrix& h) {
  require_square(h, "herm_eig");
  if (!h.all_finite()) throw DomainError("herm_eig: non-finite entry");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, h.max_abs());
  if (max_abs_diff(h, h.adjoint()) > kHermitianTolerance * scale) {
    throw DomainError("herm_eig: input is not Hermitian");
  }
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = kJacobiTolerance * std::max(a.frobenius_norm(), 1e-300);
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > target) {
    if (++sweep > kJacobiSweepLimit) {
      throw ConvergenceError("herm_eig: Jacobi iteration did not converge in 64 sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermEig out;
  out.eigenvalues.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVD and spectral functions

Svd svd(const ComplexMatrix& a) {
  if (!a.all_finite()) throw DomainError("svd: non-finite entry");
  if (a.rows() >= a.cols()) return tall_svd(a);
  Svd t = tall_svd(a.adjoint());
  return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  return svd(a).sigma.front();
}

ComplexMatrix herm_fun(const HermEig& eig, const std::function<double(double)>& f) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<double> fvals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues[i];
    const double y = f(lambda);
    if (!std::isfinite(y) || std::abs(y) > kPoleMagnitude) {
      std::ostringstream os;
      os.precision(17);
      os << "herm_fun: function is singular at eigenvalue " << lambda;
      throw PoleError(os.str(), lambda);
    }
    fvals[i] = y;
  }
  const ComplexMatrix& v = eig.vectors;
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += v(r, k) * fvals[k] * std::conj(v(c, k));
      out(r, c) = s;
      out(c, r) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

ComplexMatrix herm_fun(const ComplexMatrix& h, const std::function<double(double)>& f) {
  return herm_fun(herm_eig(h), f);
}

}  // namespace gphase
