#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hankel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (poles, divergent
/// series, indices out of range, zero vectors).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The weight parameter falls in a regime where the requested formula does
/// not apply.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int sweeps_used, double max_rel_offdiag)
      : Error(what), sweeps_used_(sweeps_used), max_rel_offdiag_(max_rel_offdiag) {}
  explicit ConvergenceError(const std::string& what) : ConvergenceError(what, 0, 0.0) {}

  int sweeps_used() const noexcept { return sweeps_used_; }
  /// Largest |a_pq| / sqrt(|a_pp a_qq|) left when the solver gave up.
  double max_rel_offdiag() const noexcept { return max_rel_offdiag_; }

 private:
  int sweeps_used_;
  double max_rel_offdiag_;
};

/// Adaptive precision reached its digit ceiling without agreement.
class PrecisionCeilingError : public ConvergenceError {
 public:
  PrecisionCeilingError(const std::string& what, long max_digits, int trusted_digits)
      : ConvergenceError(what), max_digits_(max_digits), trusted_digits_(trusted_digits) {}
  long max_digits() const noexcept { return max_digits_; }
  int trusted_digits() const noexcept { return trusted_digits_; }

 private:
  long max_digits_;
  int trusted_digits_;
};

/// A Cholesky pivot was not positive: the working precision cannot resolve
/// the matrix as positive definite.
class BreakdownError : public ConvergenceError {
 public:
  BreakdownError(const std::string& what, std::size_t pivot)
      : ConvergenceError(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hankel
