#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hankel/asymptotics.hpp"
#include "hankel/bigreal.hpp"
#include "hankel/complex.hpp"
#include "hankel/moments.hpp"

namespace hankel {

/// Orthonormal polynomials P_0..P_N of a weight, in the monomial basis.
///
/// coeffs is lower triangular: row j holds the coefficients of P_j, with
/// coeffs(j, j) > 0. The coefficients are carried at `internal_digits`, which
/// exceeds `digits` by enough to absorb the conditioning of the moment
/// matrix; `digits` is the precision of the matrix the basis came from.
struct OrthonormalBasis {
  std::vector<std::vector<BigReal>> coeffs;
  WeightFamily weight;
  long digits = 0;
  long internal_digits = 0;

  std::size_t order() const noexcept { return coeffs.size(); }
  long degree() const noexcept { return static_cast<long>(coeffs.size()) - 1; }
  const BigReal& coeff(std::size_t j, std::size_t m) const { return coeffs[j][m]; }
};

/// Cholesky H = L L^T, coeffs = L^-1. The factorisation is redone from the
/// weight's moments at raised precision so that the coefficients satisfy
/// the moment-orthonormality relations to about `digits` digits.
/// Throws BreakdownError when a pivot is not positive at the given precision.
OrthonormalBasis orthonormal_basis(const HankelMatrix& h);

/// sum_{m,n} coeffs(j,m) coeffs(k,n) mu_{m+n}, with moments at the basis'
/// internal precision. Equals delta_jk for a valid basis.
BigReal moment_inner_product(const OrthonormalBasis& basis, std::size_t j, std::size_t k);

/// Gram matrix of the P_j on the unit circle:
/// K_jk = int_0^2pi P_j(e^{i phi}) conj(P_k(e^{i phi})) dphi = 2 pi sum_m c_jm c_km.
SymmetricMatrix k_matrix(const OrthonormalBasis& basis);

/// 2 pi / sum_j K_jj, a lower bound for the smallest eigenvalue.
BigReal lower_bound(const SymmetricMatrix& k);

/// P_j(z) by Horner's rule. Throws DomainError when j > N.
BigComplex eval_poly(const OrthonormalBasis& basis, std::size_t j, const BigComplex& z);

struct AsymPolyValue {
  BigComplex value;
  BetaClass regime;
  Beta beta;
  long n = 0;
  BigComplex t;

  /// "eq35" (generic), "eq49" (half-integer) or "eq416" (beta = 1/2).
  std::string formula_id() const;
};

/// Large-N form of P_N(t) for t off [0, inf).
/// Throws RegimeError for beta < 1/2 and DomainError for t in [0, inf).
AsymPolyValue eval_asym_poly(const Beta& beta, long n, const BigComplex& t,
                             Precision p = Precision::from_digits(kAsymptoticDigits));

/// Large-j form of the diagonal entry K_jj. Requires beta > 1/2.
BigReal asym_k_diag(const Beta& beta, long j, Precision p = Precision::from_digits(kAsymptoticDigits));

}  // namespace hankel
