#include "hankel/moments.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "hankel/errors.hpp"
#include "hankel/special.hpp"

namespace hankel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool parse_long(std::string_view s, long& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Beta Beta::rational(long num, long den) {
  if (den <= 0 || num <= 0) throw DomainError("beta must be a positive rational");
  const long g = std::gcd(num, den);
  Beta b;
  b.exact_ = true;
  b.num_ = num / g;
  b.den_ = den / g;
  b.approx_ = static_cast<double>(b.num_) / static_cast<double>(b.den_);
  return b;
}

Beta Beta::approximate(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("beta must be positive and finite");
  Beta b;
  b.exact_ = false;
  b.approx_ = value;
  return b;
}

Beta Beta::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty beta");

  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    long num = 0;
    long den = 0;
    if (!parse_long(text.substr(0, slash), num) || !parse_long(text.substr(slash + 1), den)) {
      throw DomainError("cannot parse beta '" + std::string(text) + "'");
    }
    return rational(num, den);
  }

  // Plain decimal "123.456" is an exact rational as long as it fits.
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  long w = 0;
  long f = 0;
  const bool whole_ok = whole.empty() || parse_long(whole, w);
  const bool frac_ok = frac.empty() || parse_long(frac, f);
  const bool digits_only = whole.find_first_not_of("0123456789") == std::string_view::npos &&
                           frac.find_first_not_of("0123456789") == std::string_view::npos;
  if (whole_ok && frac_ok && digits_only && frac.size() <= 15 && whole.size() <= 9 &&
      !(whole.empty() && frac.empty())) {
    long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return rational(w * den + f, den);
  }

  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("cannot parse beta '" + std::string(text) + "'");
  }
  return approximate(v);
}

BigReal Beta::value(Precision p) const {
  if (exact_) return BigReal(num_, p) / den_;
  return BigReal(approx_, p);
}

std::string Beta::to_string() const {
  if (exact_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", approx_);
  return buf;
}

bool operator==(const Beta& a, const Beta& b) {
  if (a.exact_ && b.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.approx_ == b.approx_;
}

WeightFamily generalized_exp(const Beta& beta) { return GeneralizedExp{beta}; }

std::string weight_tag(const WeightFamily& w) {
  return std::visit(overloaded{[](const GeneralizedExp&) { return std::string("genexp"); },
                               [](const UnitLebesgue&) { return std::string("lebesgue01"); },
                               [](const HermiteFullLine&) { return std::string("hermite"); }},
                    w);
}

double log10_max_moment(const WeightFamily& w, long n) {
  const long k = 2 * n;
  return std::visit(overloaded{[&](const GeneralizedExp& g) {
                                 const double beta = g.beta.to_double();
                                 return std::lgamma((k + 1) / beta) / std::log(10.0) - std::log10(beta);
                               },
                               [&](const UnitLebesgue&) { return 0.0; },
                               [&](const HermiteFullLine&) {
                                 return std::max(std::lgamma((k + 1) / 2.0) / std::log(10.0), 0.0);
                               }},
                    w);
}

SymmetricMatrix::SymmetricMatrix(std::size_t order, Precision p) : n_(order), prec_(p) {
  data_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) data_.emplace_back(p);
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, const BigReal& v) {
  mpfr_set(data_[i * n_ + j].get(), v.get(), MPFR_RNDN);
  mpfr_set(data_[j * n_ + i].get(), v.get(), MPFR_RNDN);
}

BigReal SymmetricMatrix::trace() const {
  BigReal t(prec_);
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

BigReal moment(const WeightFamily& w, long k, Precision p) {
  if (k < 0) throw DomainError("moment index must be non-negative");
  return std::visit(overloaded{[&](const GeneralizedExp& g) {
                                 // Extra bits so the Gamma argument (k+1)/beta is not the
                                 // dominant rounding error.
                                 const Precision wp(p.bits() + 32);
                                 const BigReal beta = g.beta.value(wp);
                                 const BigReal x = BigReal(k + 1, wp) / beta;
                                 return (gamma(x) / beta).rounded(p);
                               },
                               [&](const UnitLebesgue&) { return BigReal(1L, p) / (k + 1); },
                               [&](const HermiteFullLine&) {
                                 if (k % 2 != 0) return BigReal(p);
                                 return gamma(BigReal(k + 1, p) / 2L);
                               }},
                    w);
}

std::vector<BigReal> moment_table(const WeightFamily& w, long count, Precision p) {
  std::vector<BigReal> mu;
  mu.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) mu.push_back(moment(w, k, p));
  return mu;
}

HankelMatrix build_hankel(const WeightFamily& w, long n, long digits) {
  if (n < 0) throw DomainError("build_hankel: N must be non-negative");
  const Precision p = Precision::from_digits(digits);
  const auto mu = moment_table(w, 2 * n + 1, p);
  const auto order = static_cast<std::size_t>(n + 1);
  SymmetricMatrix h(order, p);
  for (std::size_t j = 0; j < order; ++j) {
    for (std::size_t k = j; k < order; ++k) h.set(j, k, mu[j + k]);
  }
  return HankelMatrix{std::move(h), w, digits};
}

}  // namespace hankel
