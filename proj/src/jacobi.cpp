#include "hankel/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hankel/asymptotics.hpp"
#include "hankel/errors.hpp"

namespace hankel {

JacobiRotator::JacobiRotator(const SymmetricMatrix& a, bool accumulate_vectors)
    : n_(a.order()), prec_(a.precision()), accumulate_(accumulate_vectors) {
  a_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) a_.push_back(a(i, j));
  }
  if (accumulate_) {
    v_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) v_.emplace_back(i == j ? 1L : 0L, prec_);
    }
  }
  for (mpfr_ptr r : {c_, s_, t_, theta_, tmp1_, tmp2_}) mpfr_init2(r, prec_.bits());
}

JacobiRotator::~JacobiRotator() {
  for (mpfr_ptr r : {c_, s_, t_, theta_, tmp1_, tmp2_}) mpfr_clear(r);
}

const BigReal& JacobiRotator::entry(std::size_t i, std::size_t j) const {
  return i <= j ? a_[i * n_ + j] : a_[j * n_ + i];
}

BigReal JacobiRotator::off_diagonal_mass() const {
  BigReal sum(prec_);
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = p + 1; q < n_; ++q) sum += entry(p, q) * entry(p, q);
  }
  return sum * 2L;
}

// (x, y) <- (c x - s y, s x + c y)
void JacobiRotator::rotate_pair(mpfr_ptr x, mpfr_ptr y) {
  mpfr_fmms(tmp1_, c_, x, s_, y, MPFR_RNDN);
  mpfr_fmma(tmp2_, s_, x, c_, y, MPFR_RNDN);
  mpfr_swap(x, tmp1_);
  mpfr_swap(y, tmp2_);
}

bool JacobiRotator::rotate(std::size_t p, std::size_t q) {
  if (p == q || p >= n_ || q >= n_) throw DomainError("rotate: need distinct indices inside the matrix");
  if (p > q) std::swap(p, q);
  mpfr_ptr apq = at(p, q).get();
  if (mpfr_zero_p(apq)) return false;
  mpfr_ptr app = at(p, p).get();
  mpfr_ptr aqq = at(q, q).get();

  // theta = (a_qq - a_pp) / (2 a_pq);  t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
  mpfr_sub(theta_, aqq, app, MPFR_RNDN);
  mpfr_div(theta_, theta_, apq, MPFR_RNDN);
  mpfr_div_2ui(theta_, theta_, 1, MPFR_RNDN);
  if (mpfr_zero_p(theta_)) {
    mpfr_set_ui(t_, 1, MPFR_RNDN);
  } else {
    mpfr_sqr(tmp1_, theta_, MPFR_RNDN);
    mpfr_add_ui(tmp1_, tmp1_, 1, MPFR_RNDN);
    mpfr_sqrt(tmp1_, tmp1_, MPFR_RNDN);
    mpfr_abs(tmp2_, theta_, MPFR_RNDN);
    mpfr_add(tmp1_, tmp1_, tmp2_, MPFR_RNDN);
    mpfr_ui_div(t_, 1, tmp1_, MPFR_RNDN);
    if (mpfr_sgn(theta_) < 0) mpfr_neg(t_, t_, MPFR_RNDN);
  }
  // c = 1 / sqrt(t^2 + 1), s = t c
  mpfr_sqr(tmp1_, t_, MPFR_RNDN);
  mpfr_add_ui(tmp1_, tmp1_, 1, MPFR_RNDN);
  mpfr_rec_sqrt(c_, tmp1_, MPFR_RNDN);
  mpfr_mul(s_, t_, c_, MPFR_RNDN);

  mpfr_mul(tmp1_, t_, apq, MPFR_RNDN);
  mpfr_sub(app, app, tmp1_, MPFR_RNDN);
  mpfr_add(aqq, aqq, tmp1_, MPFR_RNDN);
  mpfr_set_zero(apq, 1);

  for (std::size_t r = 0; r < p; ++r) rotate_pair(at(r, p).get(), at(r, q).get());
  for (std::size_t r = p + 1; r < q; ++r) rotate_pair(at(p, r).get(), at(r, q).get());
  for (std::size_t r = q + 1; r < n_; ++r) rotate_pair(at(p, r).get(), at(q, r).get());
  if (accumulate_) {
    for (std::size_t r = 0; r < n_; ++r) rotate_pair(v_[r * n_ + p].get(), v_[r * n_ + q].get());
  }
  return true;
}

long JacobiRotator::sweep(const BigReal& tau) {
  BigReal tau2 = tau * tau;
  long rotations = 0;
  for (std::size_t q = n_; q-- > 1;) {
    for (std::size_t p = q; p-- > 0;) {
      mpfr_ptr apq = at(p, q).get();
      if (mpfr_zero_p(apq)) continue;
      mpfr_sqr(tmp1_, apq, MPFR_RNDN);
      mpfr_mul(tmp2_, at(p, p).get(), at(q, q).get(), MPFR_RNDN);
      mpfr_abs(tmp2_, tmp2_, MPFR_RNDN);
      mpfr_mul(tmp2_, tmp2_, tau2.get(), MPFR_RNDN);
      if (mpfr_greater_p(tmp1_, tmp2_)) {
        rotate(p, q);
        ++rotations;
      }
    }
  }
  return rotations;
}

double JacobiRotator::max_relative_offdiag() const {
  double worst = 0.0;
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = p + 1; q < n_; ++q) {
      const BigReal& apq = entry(p, q);
      if (apq.is_zero()) continue;
      const BigReal scale = abs(entry(p, p) * entry(q, q));
      if (scale.is_zero()) return std::numeric_limits<double>::infinity();
      const double l = apq.log10_abs() - 0.5 * scale.log10_abs();
      worst = std::max(worst, std::pow(10.0, l));
    }
  }
  return worst;
}

std::vector<BigReal> JacobiRotator::diagonal() const {
  std::vector<BigReal> d;
  d.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) d.push_back(entry(i, i));
  return d;
}

std::vector<BigReal> JacobiRotator::vector(std::size_t k) const {
  if (!accumulate_) throw DomainError("eigenvectors were not accumulated");
  std::vector<BigReal> col;
  col.reserve(n_);
  for (std::size_t r = 0; r < n_; ++r) col.push_back(v_[r * n_ + k]);
  return col;
}

SpectralResult jacobi_full_spectrum(const SymmetricMatrix& a, const JacobiConfig& cfg) {
  if (cfg.max_sweeps < 1) throw DomainError("max_sweeps must be at least 1");
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = i; j < a.order(); ++j) {
      if (!a(i, j).is_finite()) throw DomainError("jacobi: matrix entries must be finite");
    }
  }
  const Precision p = a.precision();
  const long digits = p.digits();
  BigReal tau = cfg.off_threshold ? cfg.off_threshold->rounded(p)
                                  : pow(BigReal(10L, p), -std::max(1L, digits - 10));
  if (!(tau > 0L) || !(tau < 1L)) throw DomainError("off_threshold must lie in (0, 1)");

  JacobiRotator rot(a, cfg.accumulate_vectors);
  SpectralResult out;
  out.digits = digits;
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    out.sweeps_used = sweep;
    if (rot.sweep(tau) == 0) {
      out.converged = true;
      break;
    }
  }
  out.max_rel_offdiag = rot.max_relative_offdiag();
  if (!out.converged && cfg.throw_on_failure) {
    throw ConvergenceError("jacobi: no convergence after " + std::to_string(out.sweeps_used) +
                               " sweeps; largest relative off-diagonal " + std::to_string(out.max_rel_offdiag),
                           out.sweeps_used, out.max_rel_offdiag);
  }

  auto diag = rot.diagonal();
  std::vector<std::size_t> order(diag.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
  out.eigenvalues.reserve(diag.size());
  for (std::size_t k : order) {
    out.eigenvalues.push_back(diag[k]);
    if (cfg.accumulate_vectors) out.eigenvectors.push_back(rot.vector(k));
  }
  return out;
}

SpectralResult jacobi_full_spectrum(const HankelMatrix& h, const JacobiConfig& cfg) {
  return jacobi_full_spectrum(h.entries, cfg);
}

namespace {

std::optional<BigReal> asymptotic_hint(const WeightFamily& w, long n) {
  const auto* g = std::get_if<GeneralizedExp>(&w);
  if (g == nullptr || n < 1) return std::nullopt;
  const auto kind = classify(g->beta).kind;
  if (kind == BetaClass::Kind::Indeterminate) return std::nullopt;
  return predict_lambda(g->beta, n, Precision(128)).lambda;
}

long budget(const WeightFamily& w, long n, const std::optional<BigReal>& hint, int guard) {
  if (const auto* g = std::get_if<GeneralizedExp>(&w)) {
    return required_digits(g->beta.to_double(), n, hint, guard);
  }
  return required_digits_for_magnitude(log10_max_moment(w, n), hint, guard);
}

SpectralResult solve_at(const WeightFamily& w, long n, long digits) {
  JacobiConfig cfg;
  cfg.max_sweeps = static_cast<int>(std::max(50L, 2 * (n + 1)));
  return jacobi_full_spectrum(build_hankel(w, n, digits), cfg);
}

long cross_check_digits(long digits) { return digits + (digits + 3) / 4; }

}  // namespace

long initial_digits(const WeightFamily& w, long n, const PrecisionPolicy& policy) {
  if (policy.mode == PrecisionPolicy::Mode::Fixed) return policy.digits;
  return budget(w, n, asymptotic_hint(w, n), policy.guard);
}

SpectralResult smallest_eigenvalue(const WeightFamily& w, long n, const PrecisionPolicy& policy) {
  if (n < 0) throw DomainError("smallest_eigenvalue: N must be non-negative");
  const bool adaptive = policy.mode == PrecisionPolicy::Mode::Adaptive;
  if (!adaptive && policy.digits < 1) throw DomainError("fixed precision needs a positive digit count");

  const auto hint = adaptive ? asymptotic_hint(w, n) : std::nullopt;
  long digits = adaptive ? budget(w, n, hint, policy.guard) : policy.digits;
  bool sized = !adaptive || hint.has_value() || n == 0;

  auto check_ceiling = [&](long d, int trusted) {
    if (adaptive && d > policy.max_digits) {
      throw PrecisionCeilingError("smallest_eigenvalue: " + std::to_string(policy.agreement_digits) +
                                      " agreeing digits not reached below " + std::to_string(policy.max_digits) +
                                      " digits",
                                  policy.max_digits, trusted);
    }
  };
  check_ceiling(digits, 0);

  while (true) {
    SpectralResult base = solve_at(w, n, digits);
    if (!sized) {
      // No a priori estimate: size the budget from the eigenvalue just
      // measured and measure again until the budget stops growing.
      const BigReal& lam = base.smallest();
      const long need = lam.sign() > 0 ? budget(w, n, lam, policy.guard) : 2 * digits;
      if (need > digits) {
        digits = need;
        check_ceiling(digits, 0);
        continue;
      }
      sized = true;
    }
    SpectralResult check = solve_at(w, n, cross_check_digits(digits));
    check.trusted_digits = agreeing_digits(base.smallest(), check.smallest(), static_cast<int>(base.digits));
    if (!adaptive || check.trusted_digits >= policy.agreement_digits) return check;
    digits *= 2;
    check_ceiling(digits, check.trusted_digits);
  }
}

BigReal rayleigh_quotient(const SymmetricMatrix& h, const std::vector<BigReal>& x) {
  if (x.size() != h.order()) throw DomainError("rayleigh_quotient: vector length does not match the matrix");
  const Precision p = h.precision();
  BigReal num(p);
  BigReal den(p);
  for (std::size_t j = 0; j < x.size(); ++j) {
    BigReal row(p);
    for (std::size_t k = 0; k < x.size(); ++k) row += h(j, k) * x[k];
    num += row * x[j];
    den += x[j] * x[j];
  }
  if (den.is_zero()) throw DomainError("rayleigh_quotient: zero test vector");
  return num / den;
}

}  // namespace hankel
