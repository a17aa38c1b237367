#include "hankel/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hankel/errors.hpp"

namespace hankel {

namespace {

bool is_nonpositive_integer(const BigReal& x) { return x.is_integer() && x.sign() <= 0; }

}  // namespace

BigReal gamma(const BigReal& x) { return gamma(x, x.precision()); }

BigReal gamma(const BigReal& x, Precision p) {
  if (is_nonpositive_integer(x)) {
    throw DomainError("gamma: pole at non-positive integer x = " + x.to_scientific(17));
  }
  BigReal out(p);
  mpfr_gamma(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal pochhammer(const BigReal& x, long m) {
  BigReal out(1L, x.precision());
  for (long i = 0; i < m; ++i) out *= x + i;
  return out;
}

BigReal hyp2f1_series(const BigReal& a, const BigReal& b, const BigReal& c, const BigReal& x) {
  const Precision p = max(max(a.precision(), b.precision()), max(c.precision(), x.precision()));
  if (is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1_series: pole, c = " + c.to_scientific(17) + " is a non-positive integer");
  }
  if (!(abs(x) < 1L)) {
    throw DomainError("hyp2f1_series: series diverges for |x| >= 1 (x = " + x.to_scientific(17) + ")");
  }

  const BigReal tol = pow(BigReal(10L, p), -(p.digits() + 5));
  BigReal term(1L, p);
  BigReal sum(1L, p);
  BigReal an = a.rounded(p);
  BigReal bn = b.rounded(p);
  BigReal cn = c.rounded(p);
  int small_run = 0;
  // Bound on terms; |x| < 1 guarantees geometric decay eventually.
  const long max_terms = 10'000'000;
  for (long n = 0; n < max_terms; ++n) {
    term *= an;
    term *= bn;
    term /= cn;
    term *= x;
    term /= n + 1;
    sum += term;
    if (term.is_zero()) return sum;  // terminating series (a or b a non-positive integer)
    if (abs(term) < tol * abs(sum)) {
      if (++small_run == 3) return sum;
    } else {
      small_run = 0;
    }
    an += 1L;
    bn += 1L;
    cn += 1L;
  }
  throw ConvergenceError("hyp2f1_series: no convergence within term limit");
}

long required_digits_for_magnitude(double log10_max_entry, const std::optional<BigReal>& lambda_hint,
                                   int guard) {
  long digits = std::max(0L, static_cast<long>(std::ceil(log10_max_entry)));
  if (lambda_hint) {
    if (lambda_hint->sign() <= 0) throw DomainError("required_digits: eigenvalue hint must be positive");
    digits += std::max(0L, static_cast<long>(std::ceil(-lambda_hint->log10_abs())));
  }
  return digits + guard;
}

long required_digits(double beta, long n, const std::optional<BigReal>& lambda_hint, int guard) {
  if (!(beta > 0.0)) throw DomainError("required_digits: beta must be positive");
  if (n < 0) throw DomainError("required_digits: n must be non-negative");
  // log10 mu_2n = log10 Gamma((2n+1)/beta) - log10 beta, at double-range safe precision.
  const Precision p(128);
  BigReal arg(static_cast<long>(2 * n + 1), p);
  arg /= BigReal(beta, p);
  BigReal lg(p);
  int sign = 1;
  mpfr_lgamma(lg.get(), &sign, arg.get(), MPFR_RNDN);
  const double log10_mu = lg.to_double() / std::log(10.0) - std::log10(beta);
  return required_digits_for_magnitude(log10_mu, lambda_hint, guard);
}

}  // namespace hankel
