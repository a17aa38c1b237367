#include "hankel/orthopoly.hpp"

#include <algorithm>
#include <cmath>

#include "hankel/errors.hpp"

namespace hankel {

namespace {

/// Lower Cholesky factor of the Hankel matrix with entries mu[j+k].
/// Returns the rows of L; throws BreakdownError on a non-positive pivot.
std::vector<std::vector<BigReal>> cholesky(const std::vector<BigReal>& mu, std::size_t n, Precision p) {
  std::vector<std::vector<BigReal>> l(n);
  for (std::size_t i = 0; i < n; ++i) {
    l[i].assign(i + 1, BigReal(p));
    for (std::size_t j = 0; j <= i; ++j) {
      BigReal dot(p);
      for (std::size_t k = 0; k < j; ++k) mpfr_fma(dot.get(), l[i][k].get(), l[j][k].get(), dot.get(), MPFR_RNDN);
      const BigReal s = mu[i + j].rounded(p) - dot;
      if (i == j) {
        if (!(s > 0L)) {
          throw BreakdownError("cholesky: pivot " + std::to_string(i) + " is not positive at " +
                                   std::to_string(p.digits()) + " digits",
                               i);
        }
        l[i][i] = sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

/// Inverse of a lower-triangular matrix given by rows.
std::vector<std::vector<BigReal>> invert_lower(const std::vector<std::vector<BigReal>>& l, Precision p) {
  const std::size_t n = l.size();
  std::vector<std::vector<BigReal>> x(n);
  BigReal s(p);
  for (std::size_t i = 0; i < n; ++i) {
    x[i].assign(i + 1, BigReal(p));
    x[i][i] = BigReal(1L, p) / l[i][i];
    for (std::size_t j = 0; j < i; ++j) {
      mpfr_set_zero(s.get(), 1);
      for (std::size_t k = j; k < i; ++k) mpfr_fma(s.get(), l[i][k].get(), x[k][j].get(), s.get(), MPFR_RNDN);
      x[i][j] = -s / l[i][i];
    }
  }
  return x;
}

Precision asym_precision(Precision p) { return Precision(p.bits() + 64); }

/// beta with half-integers and 1/2 snapped to their exact values.
BigReal formula_beta(const Beta& beta, const BetaClass& cls, Precision p) {
  if (cls.kind == BetaClass::Kind::HalfInteger) return BigReal(2 * cls.half_integer_n + 1, p) / 2L;
  if (cls.kind == BetaClass::Kind::Critical) return BigReal(1L, p) / 2L;
  return beta.value(p);
}

}  // namespace

OrthonormalBasis orthonormal_basis(const HankelMatrix& h) {
  const std::size_t n = h.order();
  if (n == 0) throw DomainError("orthonormal_basis: empty matrix");
  const Precision p = h.entries.precision();

  std::vector<BigReal> mu;
  mu.reserve(2 * n - 1);
  for (std::size_t k = 0; k < 2 * n - 1; ++k) mu.push_back(h(std::min(k, n - 1), k - std::min(k, n - 1)));

  // First pass at the matrix precision: detects breakdown and measures how
  // far the pivots fall below the diagonal.
  const auto l0 = cholesky(mu, n, p);
  double log10_kappa = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    log10_kappa = std::max(log10_kappa, h(j, j).log10_abs() - 2.0 * l0[j][j].log10_abs());
  }

  const long internal = h.digits + 2 * static_cast<long>(std::ceil(log10_kappa)) + 10;
  const Precision ip = Precision::from_digits(internal);
  const auto mu_hi = moment_table(h.weight, static_cast<long>(2 * n - 1), ip);
  const auto l = cholesky(mu_hi, n, ip);

  OrthonormalBasis out{invert_lower(l, ip), h.weight, h.digits, internal};
  return out;
}

BigReal moment_inner_product(const OrthonormalBasis& basis, std::size_t j, std::size_t k) {
  if (j >= basis.order() || k >= basis.order()) throw DomainError("moment_inner_product: index out of range");
  const Precision p = Precision::from_digits(basis.internal_digits);
  const auto mu = moment_table(basis.weight, static_cast<long>(j + k + 1), p);
  BigReal sum(p);
  for (std::size_t m = 0; m <= j; ++m) {
    BigReal row(p);
    for (std::size_t q = 0; q <= k; ++q) mpfr_fma(row.get(), basis.coeffs[k][q].get(), mu[m + q].get(), row.get(), MPFR_RNDN);
    mpfr_fma(sum.get(), basis.coeffs[j][m].get(), row.get(), sum.get(), MPFR_RNDN);
  }
  return sum;
}

SymmetricMatrix k_matrix(const OrthonormalBasis& basis) {
  const std::size_t n = basis.order();
  const Precision p = Precision::from_digits(basis.internal_digits);
  const BigReal two_pi = BigReal::pi(p) * 2L;
  SymmetricMatrix k(n, p);
  BigReal s(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      mpfr_set_zero(s.get(), 1);
      for (std::size_t m = 0; m <= j; ++m) {
        mpfr_fma(s.get(), basis.coeffs[i][m].get(), basis.coeffs[j][m].get(), s.get(), MPFR_RNDN);
      }
      k.set(i, j, s * two_pi);
    }
  }
  return k;
}

BigReal lower_bound(const SymmetricMatrix& k) {
  if (k.order() == 0) throw DomainError("lower_bound: empty K matrix");
  return BigReal::pi(k.precision()) * 2L / k.trace();
}

BigComplex eval_poly(const OrthonormalBasis& basis, std::size_t j, const BigComplex& z) {
  if (j >= basis.order()) {
    throw DomainError("eval_poly: degree " + std::to_string(j) + " exceeds basis degree " +
                      std::to_string(basis.degree()));
  }
  const auto& c = basis.coeffs[j];
  BigComplex acc(c[j], BigReal(c[j].precision()));
  for (std::size_t m = j; m-- > 0;) {
    acc = acc * z;
    acc.re += c[m];
  }
  return acc;
}

std::string AsymPolyValue::formula_id() const {
  switch (regime.kind) {
    case BetaClass::Kind::HalfInteger:
      return "eq49";
    case BetaClass::Kind::Critical:
      return "eq416";
    default:
      return "eq35";
  }
}

AsymPolyValue eval_asym_poly(const Beta& beta, long n, const BigComplex& t, Precision p) {
  const BetaClass cls = classify(beta);
  if (cls.kind == BetaClass::Kind::Indeterminate) {
    throw RegimeError("eval_asym_poly: indeterminate regime (beta = " + beta.to_string() + " < 1/2)");
  }
  if (n < 1) throw DomainError("eval_asym_poly: N must be at least 1");
  if (t.im.is_zero() && !(t.re < 0L)) throw DomainError("eval_asym_poly: t lies on the cut [0, inf)");

  const Precision wp = asym_precision(p);
  const BigReal pi = BigReal::pi(wp);
  const BigReal nn(n, wp);
  const BigReal quarter = BigReal(1L, wp) / 4L;
  const BigComplex mt(-t.re.rounded(wp), -t.im.rounded(wp));
  const BigReal sign_n(n % 2 == 0 ? 1L : -1L, wp);

  BigComplex value(wp);
  if (cls.kind == BetaClass::Kind::Critical) {
    const BigComplex root = pow(mt, BigReal(1L, wp) / 2L);
    BigComplex arg = log(BigComplex(pi * nn * 4L, BigReal(wp)) / root);
    arg.re += 1L;
    const BigComplex e = exp(root * arg * (BigReal(1L, wp) / pi));
    value = pow(mt, -quarter) * e * (sign_n / (pi * 2L) / sqrt(nn));
  } else {
    const AsymptoticConstants k = asymptotic_constants(beta, wp);
    const BigReal b = formula_beta(beta, cls, wp);
    const BigReal& c = k.c;
    const auto& coeffs = k.exponent_coeffs();
    const BigReal edge = c * pow(nn, BigReal(1L, wp) / b);

    BigComplex sum(wp);
    for (long r = 0; r < k.terms; ++r) {
      BigComplex term = pow(mt, BigReal(2 * r + 1, wp) / 2L) * (coeffs[static_cast<std::size_t>(r)] / pow(edge, r));
      sum = r % 2 == 0 ? sum + term : sum - term;
    }
    BigComplex exponent = sum * (pow(nn, 1L - 1L / (b * 2L)) / sqrt(pi * c));

    const BigComplex mtb = pow(mt, b);
    if (cls.kind == BetaClass::Kind::HalfInteger) {
      const long s = cls.half_integer_n % 2 == 0 ? 1 : -1;
      exponent += mtb * log(BigComplex(edge * 4L, BigReal(wp)) / mt) * (BigReal(s, wp) / (pi * 2L));
    } else {
      exponent += mtb * (sec_pi(b) / 2L);
    }
    value = pow(mt * edge, -quarter) * exp(exponent) * (sign_n / sqrt(pi * 2L));
  }
  return AsymPolyValue{BigComplex(value.re.rounded(p), value.im.rounded(p)), cls, beta, n,
                       BigComplex(t.re.rounded(p), t.im.rounded(p))};
}

BigReal asym_k_diag(const Beta& beta, long j, Precision p) {
  const BetaClass cls = classify(beta);
  if (cls.kind != BetaClass::Kind::Generic && cls.kind != BetaClass::Kind::HalfInteger) {
    throw RegimeError("asym_k_diag: requires beta > 1/2 (got " + beta.to_string() + ")");
  }
  if (j < 1) throw DomainError("asym_k_diag: j must be at least 1");
  const Precision wp = asym_precision(p);
  const BigReal pi = BigReal::pi(wp);
  const BigReal jj(j, wp);
  const AsymptoticConstants k = asymptotic_constants(beta, wp);
  const BigReal b = formula_beta(beta, cls, wp);
  const BigReal& c = k.c;
  const auto& coeffs = k.exponent_coeffs();

  BigReal sum(wp);
  for (long r = 0; r < k.terms; ++r) {
    BigReal term = coeffs[static_cast<std::size_t>(r)] / pow(c, r) * pow(jj, 1L - 1L / (b * 2L) - BigReal(r, wp) / b);
    if (r % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const BigReal exponent = sum * 2L / sqrt(pi * c);

  BigReal edge_factor(wp);
  if (cls.kind == BetaClass::Kind::HalfInteger) {
    const long s = cls.half_integer_n % 2 == 0 ? 1 : -1;
    edge_factor = pow(c * pow(jj, BigReal(1L, wp) / b) * 4L, BigReal(s, wp) / pi);
  } else {
    edge_factor = exp(sec_pi(b));
  }
  const BigReal quarter = BigReal(1L, wp) / 4L;
  const BigReal value = pow(pi * c, -quarter) / sqrt(coeffs[0]) * edge_factor *
                        pow(jj, -(BigReal(1L, wp) / 2L) - quarter / b) * exp(exponent);
  return value.rounded(p);
}

}  // namespace hankel
