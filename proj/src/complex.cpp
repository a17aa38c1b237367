#include "hankel/complex.hpp"

namespace hankel {

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  *this = *this * o;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& o) {
  re *= o;
  im *= o;
  return *this;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator*(const BigComplex& a, const BigReal& b) { return {a.re * b, a.im * b}; }

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigReal d = norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigReal norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigReal abs(const BigComplex& z) {
  BigReal out(z.precision());
  mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return out;
}

BigReal arg(const BigComplex& z) { return atan2(z.im, z.re); }

BigComplex exp(const BigComplex& z) {
  const BigReal m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

BigComplex pow(const BigComplex& z, const BigReal& w) { return exp(log(z) * w); }

}  // namespace hankel
