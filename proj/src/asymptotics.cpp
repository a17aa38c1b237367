#include "hankel/asymptotics.hpp"

#include <cmath>

#include "hankel/errors.hpp"
#include "hankel/special.hpp"

namespace hankel {

namespace {

constexpr double kClassTolerance = 1e-12;

Precision working(Precision p) { return Precision(p.bits() + 64); }

BigReal half(Precision p) { return BigReal(1L, p) / 2L; }

/// beta as used by the formulas: half-integers and 1/2 are snapped to the
/// exact value when beta was only given approximately.
BigReal effective_beta(const Beta& beta, const BetaClass& cls, Precision p) {
  if (!beta.is_exact()) {
    if (cls.kind == BetaClass::Kind::HalfInteger) return BigReal(2 * cls.half_integer_n + 1, p) / 2L;
    if (cls.kind == BetaClass::Kind::Critical) return half(p);
  }
  return beta.value(p);
}

/// E[beta - 1/2] for beta > 1/2.
long integer_part_above_half(const Beta& beta) {
  if (beta.is_exact()) return (2 * beta.num() - beta.den()) / (2 * beta.den());
  return static_cast<long>(std::floor(beta.to_double() - 0.5));
}

bool is_exactly_one(const Beta& beta) {
  return beta.is_exact() ? (beta.num() == 1 && beta.den() == 1) : beta.to_double() == 1.0;
}

void require_generic(const Beta& beta, const char* what) {
  const BetaClass cls = classify(beta);
  if (cls.kind != BetaClass::Kind::Generic) {
    throw RegimeError(std::string(what) + ": requires the generic regime, beta = " + beta.to_string() + " is " +
                      cls.name());
  }
}

long require_half_integer(const Beta& beta, const char* what) {
  const BetaClass cls = classify(beta);
  if (cls.kind != BetaClass::Kind::HalfInteger) {
    throw RegimeError(std::string(what) + ": requires beta = n + 1/2 with n >= 1, got " + beta.to_string());
  }
  return cls.half_integer_n;
}

}  // namespace

std::string BetaClass::name() const {
  switch (kind) {
    case Kind::Generic:
      return "generic";
    case Kind::HalfInteger:
      return "half-integer(" + std::to_string(half_integer_n) + ")";
    case Kind::Critical:
      return "critical";
    case Kind::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

BetaClass classify(const Beta& beta) {
  using Kind = BetaClass::Kind;
  if (beta.is_exact()) {
    const long twice_num = 2 * beta.num();
    const long den = beta.den();
    if (twice_num < den) return {Kind::Indeterminate, 0};
    if (twice_num == den) return {Kind::Critical, 0};
    // beta - 1/2 = (2 num - den) / (2 den)
    const long diff = twice_num - den;
    if (diff % (2 * den) == 0) return {Kind::HalfInteger, diff / (2 * den)};
    return {Kind::Generic, 0};
  }
  const double b = beta.to_double();
  const double tol = kClassTolerance * b;
  if (std::fabs(b - 0.5) <= tol) return {Kind::Critical, 0};
  if (b < 0.5) return {Kind::Indeterminate, 0};
  const double n = std::round(b - 0.5);
  if (n >= 1.0 && std::fabs(b - (n + 0.5)) <= tol) return {Kind::HalfInteger, static_cast<long>(n)};
  return {Kind::Generic, 0};
}

BigReal sec_pi(const BigReal& beta) { return 1L / cos(BigReal::pi(beta.precision()) * beta); }

BigReal cap_c(const BigReal& beta) {
  const Precision wp = working(beta.precision());
  const BigReal b = beta.rounded(wp);
  const BigReal g = gamma(b);
  const BigReal ratio = g * g / gamma(b * 2L);
  return (pow(ratio, 1L / b) * 4L).rounded(beta.precision());
}

BigReal coeff_a(long r, Precision p) {
  if (r < 0) throw DomainError("coeff_a: r must be non-negative");
  const Precision wp = working(p);
  const BigReal rh = BigReal(r, wp) + half(wp);
  return (gamma(rh) / (rh * gamma(BigReal(r + 1, wp)))).rounded(p);
}

BigReal coeff_A(long r, const Beta& beta, Precision p) {
  require_generic(beta, "coeff_A");
  if (r < 0 || r > integer_part_above_half(beta)) {
    throw DomainError("coeff_A: r must lie in [0, E[beta-1/2]]");
  }
  const Precision wp = working(p);
  const BigReal b = beta.value(wp);
  const BigReal one_minus_b = 1L - b;
  const BigReal three_halves_minus_b = BigReal(3L, wp) / 2L - b;
  BigReal sum(wp);
  for (long s = 0; s <= r; ++s) {
    const BigReal head = gamma(BigReal(s, wp) - half(wp)) / gamma(BigReal(s + 1, wp));
    sum += head * pochhammer(one_minus_b, r - s) / gamma(three_halves_minus_b + (r - s));
  }
  const BigReal prefactor = gamma(half(wp) - b) / 2L;
  return (coeff_a(r, wp) + prefactor * sum).rounded(p);
}

BigReal l_const(const BigReal& r) {
  if (!(r > 0L)) throw DomainError("l_const: r must be positive");
  const Precision wp = working(r.precision());
  const BigReal x = r.rounded(wp);
  const BigReal value = gamma(x + 1L) / (sqrt(BigReal::pi(wp)) * gamma(x + half(wp)));
  return value.rounded(r.precision());
}

BigReal coeff_gamma(long r, Precision p) {
  if (r < 0) return BigReal(p);
  const Precision wp = working(p);
  return (gamma(BigReal(r, wp) - half(wp)) / gamma(BigReal(r + 1, wp))).rounded(p);
}

BigReal coeff_delta(long r, const Beta& beta, Precision p) {
  const long n = require_half_integer(beta, "coeff_delta");
  const Precision wp = working(p);
  BigReal sum(wp);
  for (long s = 1; s <= n; ++s) {
    sum += coeff_gamma(s - r, wp) / l_const(BigReal(s, wp) - half(wp));
  }
  return sum.rounded(p);
}

BigReal coeff_B(long r, const Beta& beta, Precision p) {
  const long n = require_half_integer(beta, "coeff_B");
  if (r < 0 || r > n) throw DomainError("coeff_B: r must lie in [0, beta-1/2]");
  const Precision wp = working(p);
  const BigReal b = BigReal(2 * n + 1, wp) / 2L;
  return (coeff_a(r, wp) - l_const(b) / (b * 2L) * coeff_delta(n - r, beta, wp)).rounded(p);
}

const std::vector<BigReal>& AsymptoticConstants::exponent_coeffs() const {
  return regime.kind == BetaClass::Kind::HalfInteger ? big_b : big_a;
}

AsymptoticConstants asymptotic_constants(const Beta& beta, Precision p) {
  const BetaClass cls = classify(beta);
  if (cls.kind != BetaClass::Kind::Generic && cls.kind != BetaClass::Kind::HalfInteger) {
    throw RegimeError("asymptotic constants require beta > 1/2, got " + beta.to_string() + " (" + cls.name() + ")");
  }
  const BigReal b = effective_beta(beta, cls, p);
  AsymptoticConstants out{beta, cls, b, cap_c(b), 0, {}, {}, {}, {}, {}, {}, {}, BigReal(p)};
  if (cls.kind == BetaClass::Kind::Generic) {
    out.terms = integer_part_above_half(beta) + 1;
    const Precision wp = working(p);
    const BigReal bw = b.rounded(wp);
    for (long r = 0; r < out.terms; ++r) {
      out.a.push_back(coeff_a(r, p));
      // b_r / Gamma(1-beta): finite at integer beta, unlike b_r itself.
      BigReal scaled(wp);
      for (long s = 0; s <= r; ++s) {
        const BigReal head = gamma(BigReal(s, wp) - half(wp)) / gamma(BigReal(s + 1, wp));
        scaled += head * pochhammer(1L - bw, r - s) / gamma(BigReal(3L, wp) / 2L - bw + (r - s));
      }
      out.b.push_back(scaled.rounded(p));
      out.big_a.push_back(coeff_A(r, beta, p));
    }
  } else {
    const long n = cls.half_integer_n;
    out.terms = n + 1;
    for (long s = 1; s <= n; ++s) out.l.push_back(l_const(BigReal(s, p) - half(p)));
    out.l_beta = l_const(b);
    for (long r = 0; r <= n; ++r) {
      out.a.push_back(coeff_a(r, p));
      out.gamma.push_back(coeff_gamma(r, p));
      out.delta.push_back(coeff_delta(r, beta, p));
      out.big_b.push_back(coeff_B(r, beta, p));
    }
  }
  return out;
}

std::string PredictionResult::formula_id() const {
  switch (formula) {
    case Formula::Eq318:
      return "eq318";
    case Formula::Eq415:
      return "eq415";
    case Formula::Eq319:
      return "eq319";
    case Formula::Critical418:
      return "critical418";
    case Formula::Classical:
      return "classical";
  }
  return "unknown";
}

PredictionResult predict_lambda(const Beta& beta, long n, Precision p) {
  if (n < 1) throw DomainError("predict_lambda: N must be at least 1");
  const BetaClass cls = classify(beta);
  const Precision wp = working(p);
  const BigReal pi = BigReal::pi(wp);
  const BigReal nn(n, wp);

  switch (cls.kind) {
    case BetaClass::Kind::Indeterminate:
      throw RegimeError("indeterminate regime (beta = " + beta.to_string() +
                        " < 1/2): lambda_N tends to a positive limit, no decay formula");
    case BetaClass::Kind::Critical: {
      // 2pi / lambda ~ sum_j K_jj ~ (4 pi N e)^(2/pi) / (4 sqrt(ln(4 pi N e)))
      const BigReal x = pi * nn * 4L * exp(BigReal(1L, wp));
      const BigReal lambda = pi * 2L * sqrt(log(x)) * 4L / pow(x, BigReal(2L, wp) / pi);
      return {lambda.rounded(p), cls, 1, PredictionResult::Formula::Critical418, true};
    }
    case BetaClass::Kind::Generic:
      if (is_exactly_one(beta)) {
        // 2pi / lambda ~ 2^(-5/2) pi^(-1/2) e^(-1) N^(-1/4) exp(4 sqrt N)
        const BigReal denom = pow(BigReal(2L, wp), BigReal(-5L, wp) / 2L) / sqrt(pi) * exp(BigReal(-1L, wp)) *
                              pow(nn, BigReal(-1L, wp) / 4L) * exp(sqrt(nn) * 4L);
        return {(pi * 2L / denom).rounded(p), cls, 1, PredictionResult::Formula::Eq319, false};
      }
      break;
    case BetaClass::Kind::HalfInteger:
      break;
  }

  const AsymptoticConstants k = asymptotic_constants(beta, wp);
  const BigReal& b = k.beta_value;
  const BigReal& c = k.c;
  const auto& coeffs = k.exponent_coeffs();

  BigReal sum(wp);
  for (long r = 0; r < k.terms; ++r) {
    BigReal term = coeffs[static_cast<std::size_t>(r)] / pow(c, r) * pow(nn, -BigReal(r, wp) / b);
    if (r % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const BigReal exponent = pow(nn, 1L - 1L / (b * 2L)) * 2L / sqrt(pi * c) * sum;

  BigReal edge_factor(wp);
  PredictionResult::Formula formula;
  if (cls.kind == BetaClass::Kind::HalfInteger) {
    const long sign = cls.half_integer_n % 2 == 0 ? 1 : -1;
    edge_factor = pow(c * pow(nn, 1L / b) * 4L, BigReal(sign, wp) / pi);
    formula = PredictionResult::Formula::Eq415;
  } else {
    edge_factor = exp(sec_pi(b));
    formula = PredictionResult::Formula::Eq318;
  }

  const BigReal quarter = BigReal(1L, wp) / 4L;
  const BigReal prefactor = quarter * pow(pi, -quarter) * pow(c, quarter) / sqrt(coeffs[0]) * edge_factor *
                            pow(nn, quarter / b - half(wp));
  const BigReal lambda = pi * 2L / (prefactor * exp(exponent));
  return {lambda.rounded(p), cls, k.terms, formula, false};
}

BigReal classical_szego(ClassicalWeight which, long n, Precision p) {
  if (n < 1) throw DomainError("classical_szego: N must be at least 1");
  const Precision wp = working(p);
  const BigReal pi = BigReal::pi(wp);
  const BigReal nn(n, wp);
  const BigReal pi32 = pi * sqrt(pi);
  const BigReal two(2L, wp);
  const BigReal sqrt2_minus_1 = sqrt(two) - 1L;
  BigReal out(wp);
  switch (which) {
    case ClassicalWeight::UnitSymmetric:
      out = pow(two, BigReal(9L, wp) / 4L) * pi32 * sqrt(nn) * pow(sqrt2_minus_1, 2 * n + 3);
      break;
    case ClassicalWeight::UnitInterval:
      out = pow(two, BigReal(15L, wp) / 4L) * pi32 * sqrt(nn) * pow(sqrt2_minus_1, 4 * n + 4);
      break;
    case ClassicalWeight::Hermite:
      out = pow(two, BigReal(13L, wp) / 4L) * pi32 * exp(BigReal(1L, wp)) * pow(nn, BigReal(1L, wp) / 4L) *
            exp(-sqrt(nn * 2L) * 2L);
      break;
    case ClassicalWeight::Laguerre:
      out = pow(two, BigReal(7L, wp) / 2L) * pi32 * exp(BigReal(1L, wp)) * pow(nn, BigReal(1L, wp) / 4L) *
            exp(-sqrt(nn) * 4L);
      break;
  }
  return out.rounded(p);
}

}  // namespace hankel
