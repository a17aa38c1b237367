#pragma once

#include <string>
#include <vector>

#include "hankel/bigreal.hpp"
#include "hankel/moments.hpp"

namespace hankel {

/// Regime of the weight exp(-x^beta).
struct BetaClass {
  enum class Kind {
    Generic,        // beta > 1/2 and beta - 1/2 not a positive integer
    HalfInteger,    // beta = n + 1/2, n >= 1
    Critical,       // beta = 1/2
    Indeterminate,  // 0 < beta < 1/2
  };
  Kind kind;
  /// n for HalfInteger, otherwise 0.
  long half_integer_n = 0;

  std::string name() const;
  friend bool operator==(const BetaClass&, const BetaClass&) = default;
};

/// Exact rational comparison for exact betas, relative tolerance 1e-12
/// otherwise.
BetaClass classify(const Beta& beta);

inline constexpr long kAsymptoticDigits = 60;

/// C(beta) = 4 [Gamma(beta)^2 / Gamma(2 beta)]^(1/beta): the soft edge of the
/// equilibrium support is b(N) = C N^(1/beta).
BigReal cap_c(const BigReal& beta);

/// a_r = Gamma(r+1/2) / ((r+1/2) Gamma(r+1)).
BigReal coeff_a(long r, Precision p);

/// A_r = a_r + Gamma(1/2-beta)/2 * sum_s Gamma(s-1/2)/Gamma(s+1) * (1-beta)_{r-s} / Gamma(3/2-beta+r-s).
/// The Pochhammer form removes the Gamma(1-beta) pole at integer beta.
/// Throws RegimeError when beta is a half-integer >= 3/2.
BigReal coeff_A(long r, const Beta& beta, Precision p);

/// L_r = Gamma(r+1) / (sqrt(pi) Gamma(r+1/2)), i.e. (r/2pi) C(r)^r.
BigReal l_const(const BigReal& r);

/// gamma_r = Gamma(r-1/2)/Gamma(r+1) for r >= 0, 0 for r < 0.
BigReal coeff_gamma(long r, Precision p);

/// delta_r = sum_{s=1}^{beta-1/2} gamma_{s-r} / L_{s-1/2}. HalfInteger only.
BigReal coeff_delta(long r, const Beta& beta, Precision p);

/// B_r = a_r - L_beta/(2 beta) * delta_{beta-1/2-r}, 0 <= r <= beta-1/2.
BigReal coeff_B(long r, const Beta& beta, Precision p);

/// Every constant the predictors need for one beta.
struct AsymptoticConstants {
  Beta beta;
  BetaClass regime;
  BigReal beta_value;
  BigReal c;
  /// Number of terms in the exponential sums, E[beta - 1/2] + 1.
  long terms = 0;
  std::vector<BigReal> a;
  /// Generic regime.
  std::vector<BigReal> b;
  std::vector<BigReal> big_a;
  /// HalfInteger regime; l holds L_{1/2}, L_{3/2}, ..., and l_beta is L_beta.
  std::vector<BigReal> l;
  std::vector<BigReal> gamma;
  std::vector<BigReal> delta;
  std::vector<BigReal> big_b;
  BigReal l_beta;

  /// A_r (Generic) or B_r (HalfInteger) for r < terms.
  const std::vector<BigReal>& exponent_coeffs() const;
};

/// Throws RegimeError for beta <= 1/2.
AsymptoticConstants asymptotic_constants(const Beta& beta, Precision p);

struct PredictionResult {
  enum class Formula { Eq318, Eq415, Eq319, Critical418, Classical };

  BigReal lambda;
  BetaClass regime;
  long terms_used = 0;
  Formula formula;
  /// The beta = 1/2 predictor rests on an unproved relation.
  bool conjectural = false;

  std::string formula_id() const;
};

/// Large-N prediction of the smallest eigenvalue of the order-(N+1) moment
/// matrix. beta = 1 uses the closed Laguerre form, other beta > 1/2 the
/// general exponential law, beta = 1/2 the (conjectural) algebraic law.
/// Throws RegimeError for 0 < beta < 1/2.
PredictionResult predict_lambda(const Beta& beta, long n, Precision p = Precision::from_digits(kAsymptoticDigits));

enum class ClassicalWeight { UnitSymmetric, UnitInterval, Hermite, Laguerre };

/// The four classical smallest-eigenvalue laws for w=1 on (-1,1), w=1 on
/// (0,1), exp(-x^2) on R and exp(-x) on [0, inf).
BigReal classical_szego(ClassicalWeight which, long n, Precision p = Precision::from_digits(kAsymptoticDigits));

/// sec(pi beta) at precision p.
BigReal sec_pi(const BigReal& beta);

}  // namespace hankel
