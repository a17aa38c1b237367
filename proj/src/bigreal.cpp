#include "hankel/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstring>
#include <limits>

#include "hankel/errors.hpp"

namespace hankel {

namespace {

constexpr double kLog2Of10 = 3.321928094887362347870319429489390175864831393;
constexpr double kLog10Of2 = 0.301029995663981195213738894724493026768189881462;

long max_prec(const BigReal& a, const BigReal& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

}  // namespace

Precision Precision::from_digits(long digits) {
  return Precision(static_cast<long>(std::ceil(static_cast<double>(std::max(digits, 1L)) * kLog2Of10)));
}

long Precision::digits() const noexcept {
  return static_cast<long>(std::floor(static_cast<double>(bits_) * kLog10Of2));
}

BigReal::BigReal(Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long v, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(double v, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, Precision p) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw DomainError("cannot parse empty number");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigReal num = parse(s.substr(0, slash), p);
    BigReal den = parse(s.substr(slash + 1), p);
    if (den.is_zero()) throw DomainError("zero denominator in '" + s + "'");
    return num / den;
  }
  BigReal out(p);
  if (mpfr_set_str(out.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("cannot parse number '" + s + "'");
  }
  return out;
}

BigReal BigReal::from_decimal(std::string_view text, Precision p) { return parse(text, p); }

BigReal BigReal::pi(Precision p) {
  BigReal out(p);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (v_->_mpfr_d == nullptr) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
  } else if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

BigReal BigReal::rounded(Precision p) const {
  BigReal out(p);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

BigReal& BigReal::operator+=(const BigReal& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator+=(long o) {
  mpfr_add_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(precision());
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator+(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_add_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_sub_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_mul_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_div_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_sub(out.v_, a, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_div(out.v_, a, b.v_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

double BigReal::log10_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * kLog10Of2;
}

std::string BigReal::to_decimal() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0.0e0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign_str;
  if (!digits.empty() && digits.front() == '-') {
    sign_str = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return sign_str + "0." + digits + "e" + std::to_string(static_cast<long>(e));
}

std::string BigReal::to_scientific(int significant) const {
  char* raw = nullptr;
  const int len = mpfr_asprintf(&raw, "%.*Re", std::max(significant - 1, 0), v_);
  if (len < 0) throw Error("formatting failed");
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

BigReal abs(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal sqrt(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal exp(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_exp(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal log(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_log(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal log10(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_log10(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal out(max(x.precision(), y.precision()));
  mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, long n) {
  BigReal out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
  return out;
}

BigReal sin(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_sin(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal cos(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_cos(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal out(max(x.precision(), y.precision()));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal floor(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

int agreeing_digits(const BigReal& a, const BigReal& b, int cap) {
  if (a == b) return cap;
  const BigReal scale = max(abs(a), abs(b));
  if (scale.is_zero()) return cap;
  const double rel = (abs(a - b) / scale).log10_abs();
  const int d = static_cast<int>(std::floor(-rel));
  return std::clamp(d, 0, cap);
}

}  // namespace hankel
