#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hankel/bigreal.hpp"
#include "hankel/moments.hpp"
#include "hankel/records.hpp"
#include "hankel/special.hpp"

namespace hankel {

struct RunConfig {
  std::vector<Beta> betas;
  std::vector<long> ns;
  PrecisionPolicy policy = PrecisionPolicy::adaptive();
  int workers = 1;
  std::filesystem::path out_dir = "results";
  bool use_cache = true;

  /// Throws DomainError for empty lists or workers < 1.
  void validate() const;
};

struct CellOptions {
  /// Also build the orthonormal basis and record 2 pi / sum K_jj.
  bool with_bound = false;
  /// nullptr disables the cache.
  const ResultStore* store = nullptr;
};

/// Solves (w, N) or returns a cached record. A cached record is reused when
/// it has every requested field and at least the requested digits (fixed
/// policy) or agreement (adaptive policy).
ExperimentRecord solve_cell(const WeightFamily& w, long n, const PrecisionPolicy& policy, const CellOptions& opt = {});

/// Runs fn(i) for i in [0, count) on `workers` threads. Exceptions are caught
/// per task; the returned strings are empty for tasks that succeeded.
std::vector<std::string> run_pool(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct Table1Row {
  Beta beta;
  long n;
  std::optional<ExperimentRecord> numeric;
  BigReal theoretical;
  std::optional<double> pct_error;
  std::string note;
};

inline constexpr const char* kTable1Header = "beta,N,numerical,theoretical,pct_error";

/// The default Table-1 betas and N (150 only; `slow` adds 200 and 300).
std::vector<Beta> table1_betas();
std::vector<long> table1_ns(bool slow);

/// Table-1 grid. The numerical column is the smallest eigenvalue of the
/// N x N moment matrix (the printed table's convention), the theoretical
/// column predict_lambda(beta, N). Rows come back sorted by (beta, N);
/// failed cells carry a note and no numeric value.
std::vector<Table1Row> run_table1(const RunConfig& cfg);
std::string table1_csv(const std::vector<Table1Row>& rows);

enum class DecayClass { Plateau, Exponential, Algebraic };
std::string to_string(DecayClass c);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};
/// Least squares y = a + b x. r_squared is 0 when x or y is constant.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct PhaseScanRecord {
  Beta beta;
  std::vector<long> ns;
  std::vector<BigReal> lambdas;
  /// sum_j K_jj; tends to a finite limit below beta = 1/2.
  std::vector<BigReal> sum_k;
  DecayClass decay = DecayClass::Plateau;
  /// ln(1/lambda) = a + c N^(1-1/(2 beta)).
  LinearFit exponential_fit;
  /// ln(1/lambda) = a + c ln N.
  LinearFit algebraic_fit;
};

/// Decay rules, in order: plateau if lambda at the largest N is at least
/// half of lambda at the smallest N; exponential if beta > 1/2 and the
/// first fit has R^2 >= 0.99; algebraic if the second fit has R^2 >= 0.98;
/// otherwise whichever of the two fits has the larger R^2.
DecayClass classify_decay(const Beta& beta, const std::vector<long>& ns, const std::vector<BigReal>& lambdas,
                          LinearFit* exp_fit = nullptr, LinearFit* alg_fit = nullptr);

std::vector<PhaseScanRecord> run_scan(const RunConfig& cfg);
std::string scan_csv(const std::vector<PhaseScanRecord>& scans);

}  // namespace hankel
