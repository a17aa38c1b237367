#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hankel/bigreal.hpp"
#include "hankel/moments.hpp"
#include "hankel/special.hpp"

namespace hankel {

struct JacobiConfig {
  int max_sweeps = 50;
  /// Relative off-diagonal tolerance: converged once every |a_pq| <=
  /// tau sqrt(|a_pp a_qq|). Empty means 10^-(digits-10) of the input.
  std::optional<BigReal> off_threshold;
  /// Accumulate the rotation product (eigenvectors as columns).
  bool accumulate_vectors = false;
  /// Throw ConvergenceError when max_sweeps is exhausted; otherwise return
  /// with converged = false.
  bool throw_on_failure = true;
};

struct SpectralResult {
  /// Ascending.
  std::vector<BigReal> eigenvalues;
  int sweeps_used = 0;
  bool converged = false;
  long digits = 0;
  /// Leading decimal digits of the smallest eigenvalue confirmed by a
  /// higher-precision rerun (0 when no rerun was made).
  int trusted_digits = 0;
  /// Largest |a_pq| / sqrt(|a_pp a_qq|) after the final sweep.
  double max_rel_offdiag = 0.0;
  /// eigenvectors[k] belongs to eigenvalues[k]; filled only on request.
  std::vector<std::vector<BigReal>> eigenvectors;

  const BigReal& smallest() const { return eigenvalues.front(); }
};

/// Working copy of a symmetric matrix being diagonalised by plane rotations.
/// Only the upper triangle is maintained.
class JacobiRotator {
 public:
  explicit JacobiRotator(const SymmetricMatrix& a, bool accumulate_vectors = false);
  JacobiRotator(const JacobiRotator&) = delete;
  JacobiRotator& operator=(const JacobiRotator&) = delete;
  ~JacobiRotator();

  std::size_t order() const noexcept { return n_; }
  /// Current entry (i, j), read from the upper triangle.
  const BigReal& entry(std::size_t i, std::size_t j) const;
  /// Sum over p != q of a_pq^2.
  BigReal off_diagonal_mass() const;

  /// Annihilates a_pq (p != q) with one rotation. Returns false when the
  /// entry was already zero.
  bool rotate(std::size_t p, std::size_t q);

  /// One cyclic sweep, visiting columns from last to first and rows upward
  /// within each column (the moment matrices grow down the diagonal).
  /// Rotates every a_pq with |a_pq| > tau sqrt(|a_pp a_qq|). Returns the
  /// number of rotations applied.
  long sweep(const BigReal& tau);

  double max_relative_offdiag() const;
  std::vector<BigReal> diagonal() const;
  /// Column k of the accumulated rotation product.
  std::vector<BigReal> vector(std::size_t k) const;

 private:
  BigReal& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  void rotate_pair(mpfr_ptr x, mpfr_ptr y);

  std::size_t n_;
  Precision prec_;
  std::vector<BigReal> a_;
  std::vector<BigReal> v_;
  bool accumulate_;
  // Scratch registers reused by every rotation.
  mpfr_t c_, s_, t_, theta_, tmp1_, tmp2_;
};

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
SpectralResult jacobi_full_spectrum(const SymmetricMatrix& a, const JacobiConfig& cfg = {});
SpectralResult jacobi_full_spectrum(const HankelMatrix& h, const JacobiConfig& cfg = {});

/// Smallest eigenvalue of the order-(N+1) moment matrix of `w`.
///
/// The base precision comes from the policy (fixed digits, or the adaptive
/// budget sized from the largest moment and an eigenvalue estimate). The
/// solve is repeated at +25% digits; trusted_digits counts the leading
/// digits on which the two runs agree and the higher-precision run is
/// returned. In adaptive mode the base digits double until the requested
/// agreement is reached or max_digits is exceeded (PrecisionCeilingError).
/// Each solve allows max(50, 2(N+1)) sweeps.
SpectralResult smallest_eigenvalue(const WeightFamily& w, long n, const PrecisionPolicy& policy = {});

/// Starting digit budget smallest_eigenvalue would use for (w, N).
long initial_digits(const WeightFamily& w, long n, const PrecisionPolicy& policy);

/// x^T H x / x^T x. Throws DomainError for the zero vector.
BigReal rayleigh_quotient(const SymmetricMatrix& h, const std::vector<BigReal>& x);

}  // namespace hankel
