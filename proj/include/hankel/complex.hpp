#pragma once

#include "hankel/bigreal.hpp"

namespace hankel {

/// Minimal complex number over BigReal: what the polynomial evaluators need
/// and nothing more. Log and pow use the principal branch.
struct BigComplex {
  BigReal re;
  BigReal im;

  explicit BigComplex(Precision p) : re(p), im(p) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const BigReal& r) : re(r), im(r.precision()) {}

  Precision precision() const { return max(re.precision(), im.precision()); }
  bool is_real() const { return im.is_zero(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator*=(const BigReal& o);
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigReal& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a);

BigReal norm(const BigComplex& z);  // |z|^2
BigReal abs(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);
/// z^w = exp(w Log z).
BigComplex pow(const BigComplex& z, const BigReal& w);

}  // namespace hankel
