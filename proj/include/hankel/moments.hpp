#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hankel/bigreal.hpp"

namespace hankel {

/// Exponent beta of the weight exp(-x^beta). Kept as an exact rational when
/// it was given as one ("3/2", "1.75", "2"), so half-integers and the
/// critical point are recognised without tolerance.
class Beta {
 public:
  /// Exact rational num/den; den > 0 and num > 0 required.
  static Beta rational(long num, long den);
  /// Non-rational value; classification falls back to a relative tolerance.
  static Beta approximate(double value);
  /// "p/q", an integer, or a plain decimal; anything else becomes approximate.
  static Beta parse(std::string_view text);

  bool is_exact() const noexcept { return exact_; }
  long num() const noexcept { return num_; }
  long den() const noexcept { return den_; }
  double to_double() const noexcept { return approx_; }
  BigReal value(Precision p) const;
  /// "3/2", "1", or the shortest round-tripping decimal for approximate values.
  std::string to_string() const;

  friend bool operator==(const Beta& a, const Beta& b);
  friend bool operator<(const Beta& a, const Beta& b) { return a.approx_ < b.approx_; }

 private:
  Beta() = default;
  bool exact_ = false;
  long num_ = 0;
  long den_ = 1;
  double approx_ = 0.0;
};

/// exp(-t^beta) on [0, inf). Laguerre is GeneralizedExp with beta = 1.
struct GeneralizedExp {
  Beta beta;
};
/// w = 1 on [0, 1]; its moment matrix is the Hilbert matrix.
struct UnitLebesgue {};
/// exp(-t^2) on the whole real line.
struct HermiteFullLine {};

using WeightFamily = std::variant<GeneralizedExp, UnitLebesgue, HermiteFullLine>;

WeightFamily generalized_exp(const Beta& beta);
/// Stable tag used in file paths and records: "genexp", "lebesgue01", "hermite".
std::string weight_tag(const WeightFamily& w);
/// log10 of the largest entry mu_2N of the order-(N+1) moment matrix.
double log10_max_moment(const WeightFamily& w, long n);

/// Dense symmetric matrix of BigReal. set(i, j) writes both triangles, so
/// symmetry holds exactly by construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix(std::size_t order, Precision p);

  std::size_t order() const noexcept { return n_; }
  Precision precision() const noexcept { return prec_; }
  const BigReal& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const BigReal& v);
  BigReal trace() const;

 private:
  std::size_t n_;
  Precision prec_;
  std::vector<BigReal> data_;
};

/// Moment matrix H_jk = mu_{j+k}, order N+1.
struct HankelMatrix {
  SymmetricMatrix entries;
  WeightFamily weight;
  long digits;

  std::size_t order() const noexcept { return entries.order(); }
  const BigReal& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/// mu_k of the weight at precision p.
///   GeneralizedExp(beta): Gamma((k+1)/beta)/beta
///   UnitLebesgue:         1/(k+1)
///   HermiteFullLine:      Gamma((k+1)/2) for even k, 0 for odd k
BigReal moment(const WeightFamily& w, long k, Precision p);

/// The 2N+1 distinct moments mu_0 .. mu_2N, each computed once.
std::vector<BigReal> moment_table(const WeightFamily& w, long count, Precision p);

/// (N+1)x(N+1) Hankel matrix at `digits` decimal digits.
HankelMatrix build_hankel(const WeightFamily& w, long n, long digits);

}  // namespace hankel
