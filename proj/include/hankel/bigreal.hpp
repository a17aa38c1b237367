#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace hankel {

/// Mantissa length of a BigReal, in bits.
class Precision {
 public:
  constexpr explicit Precision(long bits) : bits_(bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits) {}

  /// Smallest precision that holds `digits` significant decimal digits.
  static Precision from_digits(long digits);

  constexpr long bits() const noexcept { return bits_; }
  /// Decimal digits represented by the mantissa (floor).
  long digits() const noexcept;

  friend constexpr auto operator<=>(Precision, Precision) = default;

 private:
  long bits_;
};

constexpr Precision max(Precision a, Precision b) { return a < b ? b : a; }

/// Arbitrary-precision binary floating-point real.
///
/// Every value carries its own mantissa length. Results of binary
/// operations take the larger precision of the two operands and are
/// rounded to nearest.
class BigReal {
 public:
  explicit BigReal(Precision p);
  BigReal(int v, Precision p) : BigReal(static_cast<long>(v), p) {}
  BigReal(long v, Precision p);
  BigReal(double v, Precision p);

  /// Parses a decimal literal ("1.25", "-3e-7", "0.5e1") or a ratio "p/q".
  static BigReal parse(std::string_view text, Precision p);
  /// Inverse of to_decimal(): reads "[-]0.<digits>e<exp>".
  static BigReal from_decimal(std::string_view text, Precision p);

  static BigReal pi(Precision p);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  Precision precision() const noexcept { return Precision(mpfr_get_prec(v_)); }
  /// Copy rounded to a different mantissa length.
  BigReal rounded(Precision p) const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(long o);
  BigReal& operator-=(long o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);

  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

  // Mixing with a double would silently truncate it through the long
  // overloads; construct a BigReal explicitly instead.
  template <std::floating_point F> friend BigReal operator+(const BigReal&, F) = delete;
  template <std::floating_point F> friend BigReal operator-(const BigReal&, F) = delete;
  template <std::floating_point F> friend BigReal operator*(const BigReal&, F) = delete;
  template <std::floating_point F> friend BigReal operator/(const BigReal&, F) = delete;
  template <std::floating_point F> friend BigReal operator+(F, const BigReal&) = delete;
  template <std::floating_point F> friend BigReal operator-(F, const BigReal&) = delete;
  template <std::floating_point F> friend BigReal operator*(F, const BigReal&) = delete;
  template <std::floating_point F> friend BigReal operator/(F, const BigReal&) = delete;
  template <std::floating_point F> friend bool operator==(const BigReal&, F) = delete;
  template <std::floating_point F> friend std::partial_ordering operator<=>(const BigReal&, F) = delete;

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }
  /// log10|x| as a double; valid far outside the double exponent range.
  double log10_abs() const;

  /// Round-trip serialization "[-]0.<digits>e<exp>" (value = 0.digits x 10^exp).
  std::string to_decimal() const;
  /// Scientific notation with `significant` digits, e.g. "2.0948e-10".
  std::string to_scientific(int significant) const;

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal floor(const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

/// Number of leading significant decimal digits on which a and b agree,
/// capped at `cap`.
int agreeing_digits(const BigReal& a, const BigReal& b, int cap);

}  // namespace hankel
