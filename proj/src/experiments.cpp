#include "hankel/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "hankel/asymptotics.hpp"
#include "hankel/errors.hpp"
#include "hankel/jacobi.hpp"
#include "hankel/orthopoly.hpp"

namespace hankel {

namespace {

bool cache_usable(const ExperimentRecord& r, const PrecisionPolicy& policy, bool with_bound) {
  if (!r.lambda_numeric) return false;
  if (with_bound && !r.lower_bound) return false;
  if (policy.mode == PrecisionPolicy::Mode::Fixed) return r.digits >= policy.digits;
  return r.trusted_digits >= policy.agreement_digits;
}

std::optional<BigReal> theory_value(const WeightFamily& w, long n) {
  const auto* g = std::get_if<GeneralizedExp>(&w);
  if (g == nullptr || n < 1 || classify(g->beta).kind == BetaClass::Kind::Indeterminate) return std::nullopt;
  return predict_lambda(g->beta, n).lambda;
}

double ln_inverse(const BigReal& x) { return -x.log10_abs() * std::log(10.0); }

std::string pct_string(double pct) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (betas.empty()) throw DomainError("no beta values given");
  if (ns.empty()) throw DomainError("no N values given");
  if (workers < 1) throw DomainError("worker count must be at least 1");
}

ExperimentRecord solve_cell(const WeightFamily& w, long n, const PrecisionPolicy& policy, const CellOptions& opt) {
  const std::string tag = weight_tag(w);
  const std::string label = beta_label(w);
  if (opt.store != nullptr) {
    if (auto cached = opt.store->best(tag, label, n); cached && cache_usable(*cached, policy, opt.with_bound)) {
      return *cached;
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  const SpectralResult r = smallest_eigenvalue(w, n, policy);
  ExperimentRecord rec;
  rec.weight = tag;
  rec.beta = label;
  rec.n = n;
  rec.digits = r.digits;
  rec.lambda_numeric = r.smallest().to_decimal();
  if (auto th = theory_value(w, n)) rec.lambda_theory = th->to_decimal();
  if (opt.with_bound) {
    const OrthonormalBasis basis = orthonormal_basis(build_hankel(w, n, r.digits));
    rec.lower_bound = lower_bound(k_matrix(basis)).rounded(Precision::from_digits(r.digits)).to_decimal();
  }
  rec.trusted_digits = r.trusted_digits;
  rec.sweeps = r.sweeps_used;
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rec.created_at = utc_timestamp();
  if (opt.store != nullptr) opt.store->put(rec);
  return rec;
}

std::vector<std::string> run_pool(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
  if (threads <= 1) {
    worker();
    return errors;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return errors;
}

std::vector<Beta> table1_betas() {
  return {Beta::rational(1, 1), Beta::rational(3, 2), Beta::rational(7, 4), Beta::rational(2, 1),
          Beta::rational(5, 2)};
}

std::vector<long> table1_ns(bool slow) {
  if (slow) return {50, 100, 150, 200, 300};
  return {50, 100, 150};
}

std::vector<Table1Row> run_table1(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Beta> betas = cfg.betas;
  std::vector<long> ns = cfg.ns;
  std::sort(betas.begin(), betas.end());
  std::sort(ns.begin(), ns.end());
  for (long n : ns) {
    if (n < 1) throw DomainError("table1 needs N >= 1");
  }

  std::vector<Table1Row> rows;
  for (const Beta& b : betas) {
    for (long n : ns) {
      rows.push_back(Table1Row{b, n, std::nullopt, predict_lambda(b, n).lambda, std::nullopt, ""});
    }
  }

  std::optional<ResultStore> store;
  if (cfg.use_cache) store.emplace(cfg.out_dir / "store");
  CellOptions opt;
  opt.store = store ? &*store : nullptr;

  const auto errors = run_pool(rows.size(), cfg.workers, [&](std::size_t i) {
    rows[i].numeric = solve_cell(generalized_exp(rows[i].beta), rows[i].n - 1, cfg.policy, opt);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      rows[i].note = errors[i];
      continue;
    }
    const Precision p(256);
    const BigReal num = BigReal::parse(*rows[i].numeric->lambda_numeric, p);
    const BigReal th = rows[i].theoretical.rounded(p);
    rows[i].pct_error = ((th - num) / num * 100L).to_double();
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << kTable1Header << '\n';
  for (const auto& r : rows) {
    out << r.beta.to_string() << ',' << r.n << ',';
    if (r.numeric) out << BigReal::parse(*r.numeric->lambda_numeric, Precision(256)).to_scientific(5);
    out << ',' << r.theoretical.to_scientific(5) << ',';
    if (r.pct_error) out << pct_string(*r.pct_error);
    out << '\n';
  }
  return out.str();
}

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::Plateau:
      return "plateau";
    case DecayClass::Exponential:
      return "exponential";
    case DecayClass::Algebraic:
      return "algebraic";
  }
  return "unknown";
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need at least two points of equal count");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  if (sxx <= 0.0) {
    f.intercept = my;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  return f;
}

DecayClass classify_decay(const Beta& beta, const std::vector<long>& ns, const std::vector<BigReal>& lambdas,
                          LinearFit* exp_fit, LinearFit* alg_fit) {
  if (ns.size() != lambdas.size() || ns.size() < 2) throw DomainError("classify_decay: need at least two points");
  const double b = beta.to_double();
  std::vector<double> y, x_exp, x_alg;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(lambdas[i] > 0L)) throw DomainError("classify_decay: eigenvalues must be positive");
    y.push_back(ln_inverse(lambdas[i]));
    x_exp.push_back(std::pow(static_cast<double>(ns[i]), 1.0 - 1.0 / (2.0 * b)));
    x_alg.push_back(std::log(static_cast<double>(ns[i])));
  }
  const LinearFit fe = fit_line(x_exp, y);
  const LinearFit fa = fit_line(x_alg, y);
  if (exp_fit) *exp_fit = fe;
  if (alg_fit) *alg_fit = fa;

  const auto lo = std::min_element(ns.begin(), ns.end()) - ns.begin();
  const auto hi = std::max_element(ns.begin(), ns.end()) - ns.begin();
  if (lambdas[hi] >= lambdas[lo] * BigReal(0.5, lambdas[lo].precision())) return DecayClass::Plateau;
  const bool exp_ok = b > 0.5 && fe.slope > 0.0 && fe.r_squared >= 0.99;
  if (exp_ok) return DecayClass::Exponential;
  if (fa.r_squared >= 0.98) return DecayClass::Algebraic;
  if (b > 0.5 && fe.r_squared > fa.r_squared) return DecayClass::Exponential;
  return DecayClass::Algebraic;
}

std::vector<PhaseScanRecord> run_scan(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Beta> betas = cfg.betas;
  std::vector<long> ns = cfg.ns;
  std::sort(betas.begin(), betas.end());
  std::sort(ns.begin(), ns.end());
  if (ns.size() < 2) throw DomainError("scan needs at least two N values");

  std::optional<ResultStore> store;
  if (cfg.use_cache) store.emplace(cfg.out_dir / "store");
  CellOptions opt;
  opt.with_bound = true;
  opt.store = store ? &*store : nullptr;

  std::vector<std::optional<ExperimentRecord>> cells(betas.size() * ns.size());
  const auto errors = run_pool(cells.size(), cfg.workers, [&](std::size_t i) {
    cells[i] = solve_cell(generalized_exp(betas[i / ns.size()]), ns[i % ns.size()], cfg.policy, opt);
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw ConvergenceError("scan cell beta=" + betas[i / ns.size()].to_string() +
                             " N=" + std::to_string(ns[i % ns.size()]) + ": " + errors[i]);
    }
  }

  std::vector<PhaseScanRecord> out;
  const Precision p(256);
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    PhaseScanRecord rec{betas[bi], ns, {}, {}, DecayClass::Plateau, {}, {}};
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const auto& cell = *cells[bi * ns.size() + ni];
      rec.lambdas.push_back(BigReal::parse(*cell.lambda_numeric, p));
      rec.sum_k.push_back(BigReal::pi(p) * 2L / BigReal::parse(*cell.lower_bound, p));
    }
    rec.decay = classify_decay(rec.beta, rec.ns, rec.lambdas, &rec.exponential_fit, &rec.algebraic_fit);
    out.push_back(std::move(rec));
  }
  return out;
}

std::string scan_csv(const std::vector<PhaseScanRecord>& scans) {
  std::ostringstream out;
  out << "beta,N,lambda,sum_k_diag,decay,exp_coeff,exp_r2,alg_slope,alg_r2\n";
  char buf[160];
  for (const auto& s : scans) {
    for (std::size_t i = 0; i < s.ns.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f", s.exponential_fit.slope, s.exponential_fit.r_squared,
                    s.algebraic_fit.slope, s.algebraic_fit.r_squared);
      out << s.beta.to_string() << ',' << s.ns[i] << ',' << s.lambdas[i].to_scientific(5) << ','
          << s.sum_k[i].to_scientific(5) << ',' << to_string(s.decay) << ',' << buf << '\n';
    }
  }
  return out.str();
}

}  // namespace hankel
