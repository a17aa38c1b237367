#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hankel/asymptotics.hpp"
#include "hankel/errors.hpp"
#include "hankel/experiments.hpp"
#include "hankel/jacobi.hpp"
#include "hankel/orthopoly.hpp"
#include "hankel/plot.hpp"

using namespace hankel;

namespace {

long parse_long(const std::string& s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

/// "50,100,150" or "a:b:step" (inclusive), or a mix of both.
std::vector<long> parse_n_list(const std::vector<std::string>& items) {
  std::vector<long> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      if (part.find(':') == std::string::npos) {
        out.push_back(parse_long(part));
        continue;
      }
      std::vector<long> f;
      std::stringstream rs(part);
      std::string x;
      while (std::getline(rs, x, ':')) f.push_back(parse_long(x));
      if (f.size() != 3 || f[2] <= 0 || f[1] < f[0]) throw DomainError("bad range '" + part + "' (want a:b:step)");
      for (long v = f[0]; v <= f[1]; v += f[2]) out.push_back(v);
    }
  }
  for (long v : out) {
    if (v < 0) throw DomainError("N must be non-negative");
  }
  return out;
}

std::vector<Beta> parse_betas(const std::vector<std::string>& items) {
  std::vector<Beta> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      Beta b = Beta::parse(part);
      if (!(b.to_double() > 0.0)) throw DomainError("beta must be positive: '" + part + "'");
      out.push_back(b);
    }
  }
  return out;
}

struct Options {
  std::vector<std::string> beta;
  std::vector<std::string> n;
  long digits = 0;
  bool adaptive = false;
  int guard = 30;
  int workers = 1;
  std::string out;
  bool slow = false;
  bool no_cache = false;
  std::string t = "-1";
  std::string input;
};

PrecisionPolicy policy_of(const Options& o) {
  if (o.digits > 0 && !o.adaptive) return PrecisionPolicy::fixed(o.digits, o.guard);
  return PrecisionPolicy::adaptive(8, 20000, o.guard);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

Beta single_beta(const Options& o) {
  const auto b = parse_betas(o.beta);
  if (b.size() != 1) throw DomainError("exactly one --beta value is required");
  return b.front();
}

std::vector<long> n_values(const Options& o) {
  const auto n = parse_n_list(o.n);
  if (n.empty()) throw DomainError("at least one --N value is required");
  return n;
}

std::string results_dir(const Options& o) { return o.out.empty() ? "results" : o.out; }

int cmd_predict(const Options& o) {
  const Beta b = single_beta(o);
  for (long n : n_values(o)) {
    const auto r = predict_lambda(b, n);
    std::cout << r.lambda.to_scientific(6) << ' ' << r.formula_id() << (r.conjectural ? " conjectural" : "") << '\n';
  }
  return 0;
}

int cmd_solve(const Options& o) {
  const Beta b = single_beta(o);
  std::optional<ResultStore> store;
  if (!o.no_cache) store.emplace(std::filesystem::path(results_dir(o)) / "store");
  CellOptions opt;
  opt.store = store ? &*store : nullptr;
  for (long n : n_values(o)) {
    const auto rec = solve_cell(generalized_exp(b), n, policy_of(o), opt);
    const BigReal lam = BigReal::parse(*rec.lambda_numeric, Precision::from_digits(rec.digits));
    std::cout << "beta=" << rec.beta << " N=" << n << " lambda=" << lam.to_scientific(6) << " digits=" << rec.digits
              << " trusted_digits=" << rec.trusted_digits << " sweeps=" << rec.sweeps << '\n';
  }
  return 0;
}

int cmd_table1(const Options& o) {
  RunConfig cfg;
  cfg.betas = o.beta.empty() ? table1_betas() : parse_betas(o.beta);
  cfg.ns = o.n.empty() ? table1_ns(o.slow) : n_values(o);
  cfg.policy = policy_of(o);
  cfg.workers = o.workers;
  cfg.out_dir = results_dir(o);
  cfg.use_cache = !o.no_cache;
  const auto rows = run_table1(cfg);
  const std::string csv = table1_csv(rows);
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = cfg.out_dir / "table1.csv";
  write_file(path.string(), csv);
  std::cout << csv;
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.note.empty()) {
      ++failed;
      std::cerr << "beta=" << r.beta.to_string() << " N=" << r.n << ": " << r.note << '\n';
    }
  }
  std::cerr << "wrote " << path.string() << '\n';
  return failed ? 3 : 0;
}

int cmd_bound(const Options& o) {
  const Beta b = single_beta(o);
  for (long n : n_values(o)) {
    const auto lam = smallest_eigenvalue(generalized_exp(b), n, policy_of(o));
    const auto basis = orthonormal_basis(build_hankel(generalized_exp(b), n, lam.digits));
    const BigReal bound = lower_bound(k_matrix(basis));
    std::cout << "beta=" << b.to_string() << " N=" << n << " bound=" << bound.to_scientific(6)
              << " lambda=" << lam.smallest().to_scientific(6)
              << " ratio=" << (lam.smallest() / bound).to_scientific(6) << '\n';
  }
  return 0;
}

int cmd_scan(const Options& o) {
  RunConfig cfg;
  cfg.betas = parse_betas(o.beta);
  cfg.ns = n_values(o);
  cfg.policy = policy_of(o);
  cfg.workers = o.workers;
  cfg.out_dir = results_dir(o);
  cfg.use_cache = !o.no_cache;
  const auto scans = run_scan(cfg);
  const std::string csv = scan_csv(scans);
  std::filesystem::create_directories(cfg.out_dir);
  write_file((cfg.out_dir / "scan.csv").string(), csv);
  std::cout << csv;
  for (const auto& s : scans) {
    std::cout << "beta=" << s.beta.to_string() << " decay=" << to_string(s.decay)
              << " exp_coeff=" << s.exponential_fit.slope << " exp_r2=" << s.exponential_fit.r_squared
              << " alg_slope=" << s.algebraic_fit.slope << " alg_r2=" << s.algebraic_fit.r_squared << '\n';
  }
  return 0;
}

int cmd_plot(const Options& o) {
  if (o.input.empty()) throw DomainError("plot needs an input CSV");
  std::ifstream in(o.input);
  if (!in) throw IoError("cannot read " + o.input);
  const std::string svg = render_pct_svg(read_pct_csv(in));
  const std::string path = o.out.empty() ? "pct_error.svg" : o.out;
  write_file(path, svg);
  std::cerr << "wrote " << path << '\n';
  return 0;
}

int cmd_polys(const Options& o) {
  const Beta b = single_beta(o);
  for (long n : n_values(o)) {
    const auto w = generalized_exp(b);
    const long digits = initial_digits(w, n, policy_of(o));
    const auto basis = orthonormal_basis(build_hankel(w, n, digits));
    const Precision p = Precision::from_digits(basis.internal_digits);
    const BigComplex t(BigReal::parse(o.t, p), BigReal(p));
    const BigComplex exact = eval_poly(basis, static_cast<std::size_t>(n), t);
    std::cout << "beta=" << b.to_string() << " N=" << n << " t=" << o.t << " exact=" << exact.re.to_scientific(6);
    if (n >= 1) {
      const auto asym = eval_asym_poly(b, n, t);
      std::cout << " asymptotic=" << asym.value.re.to_scientific(6)
                << " ratio=" << (asym.value.re / exact.re).to_scientific(6) << " formula=" << asym.formula_id();
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smallest eigenvalues of Hankel moment matrices for exp(-x^beta)"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--beta", o.beta, "beta values, e.g. 1,3/2,1.75")->delimiter(' ');
    sub->add_option("--N", o.n, "N values: comma list or a:b:step")->delimiter(' ');
    sub->add_option("--digits", o.digits, "fixed working precision in decimal digits");
    sub->add_flag("--adaptive", o.adaptive, "size precision automatically (default unless --digits)");
    sub->add_option("--guard", o.guard, "guard digits added to every estimate");
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output directory (output file for plot)");
    sub->add_flag("--slow", o.slow, "include N = 200 and 300 in table1");
    sub->add_flag("--no-cache", o.no_cache, "ignore and do not write the result store");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };
  add("predict", "asymptotic prediction of lambda_N", cmd_predict);
  add("solve", "smallest eigenvalue by Jacobi rotations", cmd_solve);
  add("table1", "numerical vs predicted grid as CSV", cmd_table1);
  add("bound", "lower bound 2 pi / sum K_jj against lambda_N", cmd_bound);
  add("scan", "decay classification across beta", cmd_scan);
  add("plot", "SVG chart of a table1 CSV", cmd_plot)->add_option("input", o.input, "table1 CSV")->required();
  add("polys", "exact vs asymptotic P_N(t)", cmd_polys)->add_option("--t", o.t, "evaluation point (default -1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn(o);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
