#pragma once

#include <stdexcept>
#include <string>

namespace gphase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is numerically singular.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double pivot)
      : Error(what), pivot_(pivot) {}
  double pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

/// Input outside the mathematical domain of an operation (non-Hermitian
/// input, zero vector, non-finite entries, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A spectral function hit a singularity on the spectrum.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Geodesic uniqueness fails: a principal angle reaches pi/2.
class CutLocusError : public Error {
 public:
  using Error::Error;
};

/// A Moebius image leaves the big cell of the chart.
class ChartExitError : public Error {
 public:
  using Error::Error;
};

/// The phase of a zero complex number was requested.
class UndefinedPhaseError : public Error {
 public:
  using Error::Error;
};

/// Iterative kernel did not converge within its sweep budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A quadrature integrand produced a non-finite value.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent job description.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace gphase
