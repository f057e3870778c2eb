#pragma once

// Dense complex linear algebra for small matrices (dimension <= 16).
//
// Everything here is a pure function of its arguments. Matrices are stored
// row-major; a 0x0 matrix is a valid value (its determinant is 1).

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace gphase {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major data; throws DimensionError on a length mismatch and
  /// DomainError on a non-finite entry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested rows, e.g. {{1, 2}, {3, 4}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> data() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;

  /// Largest entry modulus (0 for an empty matrix).
  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  bool all_finite() const noexcept;

  /// Rectangular sub-block copy.
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& src);
  ComplexMatrix column(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

/// max |a_ij - b_ij|; DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigendecomposition of a Hermitian matrix: h = vectors * diag(eigenvalues) * vectors^+.
struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix vectors;            // unitary, columns are eigenvectors
};

/// Thin singular value decomposition a = u * diag(sigma) * v^+ with
/// k = min(rows, cols) columns in u and v.
struct Svd {
  ComplexMatrix u;
  std::vector<double> sigma;  // nonnegative, descending
  ComplexMatrix v;
};

/// Determinant by LU with partial pivoting. det of the 0x0 matrix is 1.
Complex det(const ComplexMatrix& a);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
/// Throws SingularityError when a pivot falls below 1e-13 times the entry scale.
ComplexMatrix inverse(const ComplexMatrix& a);

/// Cyclic complex Jacobi eigensolver. The input is symmetrized as (h+h^+)/2
/// after checking Hermiticity to 1e-12 (relative to the entry scale).
HermEig herm_eig(const ComplexMatrix& h);

/// SVD assembled from herm_eig of a^+a (or a a^+ for wide inputs).
Svd svd(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// V diag(f(lambda_i)) V^+. Throws PoleError if f is non-finite or exceeds
/// 1e15 in magnitude at an eigenvalue.
ComplexMatrix herm_fun(const ComplexMatrix& h, const std::function<double(double)>& f);

/// Same, reusing an existing decomposition.
ComplexMatrix herm_fun(const HermEig& eig, const std::function<double(double)>& f);

}  // namespace gphase
