#pragma once

#include <optional>

#include "hankel/bigreal.hpp"

namespace hankel {

/// Gamma function at the precision of `x` (or `p` when given).
/// Throws DomainError at the poles x = 0, -1, -2, ...
BigReal gamma(const BigReal& x);
BigReal gamma(const BigReal& x, Precision p);

/// Rising factorial (x)_m = x (x+1) ... (x+m-1).
BigReal pochhammer(const BigReal& x, long m);

/// Partial sum of the Gauss series sum_n (a)_n (b)_n / (c)_n x^n / n!.
///
/// Summation stops once three consecutive terms fall below
/// 10^-(digits+5) times the running sum, where digits is the decimal
/// precision of the widest argument. Requires |x| < 1 and c not a
/// non-positive integer.
BigReal hyp2f1_series(const BigReal& a, const BigReal& b, const BigReal& c, const BigReal& x);

/// How a solve chooses its working precision.
struct PrecisionPolicy {
  enum class Mode { Fixed, Adaptive };

  Mode mode = Mode::Adaptive;
  /// Fixed mode: working decimal digits.
  long digits = 0;
  /// Adaptive mode: leading digits that must agree between the base run and
  /// the +25% cross-check run.
  int agreement_digits = 8;
  /// Adaptive mode: digit ceiling for the doubling schedule.
  long max_digits = 20000;
  /// Decimal digits added on top of every magnitude estimate.
  int guard = 30;

  static PrecisionPolicy fixed(long digits, int guard = 30) {
    return PrecisionPolicy{Mode::Fixed, digits, 0, digits, guard};
  }
  static PrecisionPolicy adaptive(int agreement_digits = 8, long max_digits = 20000, int guard = 30) {
    return PrecisionPolicy{Mode::Adaptive, 0, agreement_digits, max_digits, guard};
  }
};

/// Working decimal digits for the order-(n+1) moment matrix of exp(-x^beta):
/// ceil(log10 mu_2n) + max(0, ceil(-log10 lambda_hint)) + guard.
///
/// Without a hint this is the first rung of the doubling schedule (the
/// magnitude term plus guard). Throws DomainError for beta <= 0 or a
/// non-positive hint.
long required_digits(double beta, long n, const std::optional<BigReal>& lambda_hint, int guard = 30);

/// Same budget with an explicit log10 of the largest matrix entry.
long required_digits_for_magnitude(double log10_max_entry, const std::optional<BigReal>& lambda_hint,
                                   int guard);

}  // namespace hankel
