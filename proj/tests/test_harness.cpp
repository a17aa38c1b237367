#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include "hankel/errors.hpp"
#include "hankel/experiments.hpp"
#include "hankel/plot.hpp"
#include "hankel/records.hpp"
#include "table1_data.hpp"

using namespace hankel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("hankel_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

ExperimentRecord sample_record() {
  ExperimentRecord r;
  r.weight = "genexp";
  r.beta = "3/2";
  r.n = 49;
  r.digits = 120;
  r.lambda_numeric = "0.64066e-21";
  r.lambda_theory = "0.68438e-21";
  r.trusted_digits = 40;
  r.sweeps = 12;
  r.wall_time_s = 0.5;
  r.created_at = "2024-01-01T00:00:00Z";
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& cwd) {
  const std::string cmd = "cd '" + cwd.string() + "' && '" HANKEL_CLI "' " + args + " >out.txt 2>err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string published_csv() {
  std::ostringstream csv;
  csv << kTable1Header << '\n';
  for (const auto& c : kPublished) {
    const double num = std::strtod(c.numerical, nullptr), th = std::strtod(c.theoretical, nullptr);
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f", 100.0 * (th - num) / num);
    csv << c.beta << ',' << c.n << ',' << c.numerical << ',' << c.theoretical << ',' << pct << '\n';
  }
  return csv.str();
}

}  // namespace

TEST_CASE("records round-trip through JSON") {
  const auto r = sample_record();
  const auto j = to_json(r);
  CHECK(validate_record(j).empty());
  const auto back = record_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(j["lower_bound"].is_null());
  CHECK(j["schema_version"] == kSchemaVersion);
}

TEST_CASE("record schema violations are reported") {
  auto j = to_json(sample_record());
  auto broken = j;
  broken.erase("digits");
  CHECK_FALSE(validate_record(broken).empty());
  CHECK_THROWS_AS(record_from_json(broken), IoError);

  broken = j;
  broken["extra"] = 1;
  CHECK(validate_record(broken).front().find("unknown field") != std::string::npos);

  broken = j;
  broken["lambda_numeric"] = 1.5e-10;
  CHECK_FALSE(validate_record(broken).empty());

  broken = j;
  broken["lambda_numeric"] = "-0.1e1";
  CHECK_FALSE(validate_record(broken).empty());

  broken = j;
  broken["lambda_theory"] = "not a number";
  CHECK_FALSE(validate_record(broken).empty());

  broken = j;
  broken["schema_version"] = kSchemaVersion + 1;
  CHECK_FALSE(validate_record(broken).empty());

  broken = j;
  broken["n"] = -1;
  CHECK_FALSE(validate_record(broken).empty());

  CHECK_FALSE(validate_record(nlohmann::json::array()).empty());
}

TEST_CASE("percentage error from the full-precision strings") {
  auto r = sample_record();
  CHECK(std::fabs(*pct_error(r) - 100.0 * (0.68438 - 0.64066) / 0.64066) < 1e-9);
  r.lambda_theory.reset();
  CHECK_FALSE(pct_error(r).has_value());
}

TEST_CASE("timestamps are UTC ISO 8601") {
  CHECK(std::regex_match(utc_timestamp(), std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
}

TEST_CASE("store layout and best record") {
  TempDir dir;
  ResultStore store(dir.path);
  CHECK(store.path_for("genexp", "3/2", 49, 120) == dir.path / "genexp" / "3_2" / "49" / "120.json");
  CHECK(beta_key("7/4") == "7_4");
  CHECK(beta_label(generalized_exp(Beta::rational(7, 4))) == "7/4");
  CHECK(beta_label(UnitLebesgue{}) == "-");

  CHECK_FALSE(store.best("genexp", "3/2", 49).has_value());
  auto r = sample_record();
  store.put(r);
  r.digits = 200;
  r.lambda_numeric = "0.640661e-21";
  store.put(r);
  r.digits = 90;
  store.put(r);
  const auto best = store.best("genexp", "3/2", 49);
  REQUIRE(best.has_value());
  CHECK(best->digits == 200);
  CHECK(*best->lambda_numeric == "0.640661e-21");

  r.lambda_numeric = "0";
  CHECK_THROWS_AS(store.put(r), IoError);
}

TEST_CASE("concurrent writers never expose a partial record") {
  TempDir dir;
  ResultStore store(dir.path);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      auto r = sample_record();
      r.sweeps = t;
      for (int i = 0; i < 25; ++i) store.put(r);
    });
  }
  for (auto& th : threads) th.join();
  const auto best = store.best("genexp", "3/2", 49);
  REQUIRE(best.has_value());
  CHECK(best->sweeps >= 0);
  CHECK(best->sweeps < 8);
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir.path)) {
    if (e.is_regular_file()) {
      ++files;
      CHECK(e.path().extension() == ".json");
    }
  }
  CHECK(files == 1);
}

TEST_CASE("malformed store file raises an I/O error") {
  TempDir dir;
  ResultStore store(dir.path);
  const auto p = store.path_for("genexp", "1", 5, 40);
  fs::create_directories(p.parent_path());
  std::ofstream(p) << "{ not json";
  CHECK_THROWS_AS(store.best("genexp", "1", 5), IoError);
}

TEST_CASE("solve_cell uses the cache") {
  TempDir dir;
  ResultStore store(dir.path);
  CellOptions opt;
  opt.store = &store;
  const auto w = generalized_exp(Beta::rational(1, 1));
  const auto first = solve_cell(w, 1, PrecisionPolicy::fixed(40), opt);
  CHECK(first.lambda_numeric->rfind("0.381966", 0) == 0);
  CHECK(first.lambda_theory.has_value());

  // A planted record with a marker value proves the second call is a hit.
  auto planted = first;
  planted.lambda_numeric = "0.123e0";
  planted.digits = 60;
  store.put(planted);
  CHECK(*solve_cell(w, 1, PrecisionPolicy::fixed(40), opt).lambda_numeric == "0.123e0");
  // More digits than any stored record forces a fresh solve.
  CHECK(solve_cell(w, 1, PrecisionPolicy::fixed(80), opt).lambda_numeric->rfind("0.381966", 0) == 0);
  // A missing bound forces a fresh solve too.
  opt.with_bound = true;
  const auto withb = solve_cell(w, 1, PrecisionPolicy::fixed(40), opt);
  REQUIRE(withb.lower_bound.has_value());
  CHECK(BigReal::parse(*withb.lower_bound, Precision(64)).to_scientific(6) == "3.33333e-01");
}

TEST_CASE("worker pool collects per-task errors") {
  std::vector<int> done(20, 0);
  const auto errors = run_pool(20, 4, [&](std::size_t i) {
    if (i % 7 == 3) throw DomainError("bad " + std::to_string(i));
    done[i] = 1;
  });
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(errors[i].empty() == (i % 7 != 3));
    CHECK(done[i] == (i % 7 != 3 ? 1 : 0));
  }
  CHECK(errors[3] == "bad 3");
}

TEST_CASE("run configuration validation") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.betas = {Beta::rational(1, 1)};
  cfg.ns = {5};
  CHECK_NOTHROW(cfg.validate());
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("table1 CSV row format") {
  ExperimentRecord rec = sample_record();
  rec.beta = "1";
  rec.lambda_numeric = "0.20948e-9";
  Table1Row row{Beta::rational(1, 1), 50, rec, BigReal::parse("2.3695e-10", Precision(128)), std::nullopt, ""};
  row.pct_error = 100.0 * (2.3695 - 2.0948) / 2.0948;
  Table1Row failed{Beta::rational(5, 2), 200, std::nullopt, BigReal::parse("1.2691e-121", Precision(128)),
                   std::nullopt, "no convergence"};
  CHECK(table1_csv({row, failed}) == std::string(kTable1Header) + "\n1,50,2.0948e-10,2.3695e-10,13.11\n" +
                                         "5/2,200,,1.2691e-121,\n");
}

TEST_CASE("table1 grid is sorted, consistent and reproducible") {
  TempDir dir;
  RunConfig cfg;
  cfg.betas = {Beta::rational(2, 1), Beta::rational(1, 1)};
  cfg.ns = {12, 6};
  cfg.workers = 3;
  cfg.out_dir = dir.path;
  const auto rows = run_table1(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].beta == Beta::rational(1, 1));
  CHECK(rows[0].n == 6);
  CHECK(rows[3].beta == Beta::rational(2, 1));
  CHECK(rows[3].n == 12);
  for (const auto& r : rows) {
    REQUIRE(r.numeric.has_value());
    CHECK(r.numeric->n == r.n - 1);
    const Precision p(256);
    const BigReal num = BigReal::parse(*r.numeric->lambda_numeric, p);
    const double recomputed = ((r.theoretical.rounded(p) - num) / num * 100L).to_double();
    CHECK(std::fabs(*r.pct_error - recomputed) < 1e-6);
  }
  const std::string csv1 = table1_csv(rows);
  // Second run is served from the store and must match byte for byte.
  const std::string csv2 = table1_csv(run_table1(cfg));
  CHECK(csv1 == csv2);
  cfg.workers = 1;
  cfg.use_cache = false;
  CHECK(table1_csv(run_table1(cfg)) == csv1);

  // The CSV columns reproduce the pct column to their printed precision.
  std::istringstream in(csv1);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 5);
    const double num = std::stod(f[2]), th = std::stod(f[3]);
    CHECK(std::fabs(100.0 * (th - num) / num - std::stod(f[4])) < 0.01 + 1e-3 * std::fabs(std::stod(f[4])));
  }
}

TEST_CASE("line fits") {
  const auto f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(fit_line({1, 2, 3}, {4, 4, 4}).r_squared == 0.0);
  CHECK(fit_line({2, 2, 2}, {1, 2, 3}).slope == 0.0);
  CHECK_THROWS_AS(fit_line({1}, {1}), DomainError);
}

TEST_CASE("decay classification rules") {
  const Precision p(128);
  const std::vector<long> ns = {50, 100, 150, 200};
  auto lambdas = [&](auto fn) {
    std::vector<BigReal> out;
    for (long n : ns) out.push_back(exp(BigReal(-fn(static_cast<double>(n)), p)));
    return out;
  };
  LinearFit e, a;
  CHECK(classify_decay(Beta::rational(1, 1), ns, lambdas([](double n) { return 4 * std::sqrt(n) - 1; }), &e, &a) ==
        DecayClass::Exponential);
  CHECK(e.slope == doctest::Approx(4.0));
  CHECK(classify_decay(Beta::rational(1, 2), ns, lambdas([](double n) { return 0.7 * std::log(n); }), &e, &a) ==
        DecayClass::Algebraic);
  CHECK(a.slope == doctest::Approx(0.7));
  CHECK(classify_decay(Beta::parse("0.4"), ns, lambdas([](double n) { return 1.0 + 0.1 / n; })) ==
        DecayClass::Plateau);
  // Algebraic data at beta > 1/2 still fits N^(1-1/2beta) poorly.
  CHECK(classify_decay(Beta::rational(3, 1), {10, 100, 1000, 10000},
                       [&] {
                         std::vector<BigReal> v;
                         for (double n : {10.0, 100.0, 1000.0, 10000.0}) v.push_back(exp(BigReal(-std::log(n), p)));
                         return v;
                       }()) == DecayClass::Algebraic);
  CHECK(to_string(DecayClass::Plateau) == "plateau");
  CHECK_THROWS_AS(classify_decay(Beta::rational(1, 1), {5}, {BigReal(1L, p)}), DomainError);
  CHECK_THROWS_AS(classify_decay(Beta::rational(1, 1), {5, 6}, {BigReal(1L, p), BigReal(p)}), DomainError);
}

TEST_CASE("scan CSV") {
  TempDir dir;
  RunConfig cfg;
  cfg.betas = {Beta::rational(1, 1)};
  cfg.ns = {10, 20, 30};
  cfg.out_dir = dir.path;
  const auto scans = run_scan(cfg);
  REQUIRE(scans.size() == 1);
  CHECK(scans[0].decay == DecayClass::Exponential);
  for (std::size_t i = 0; i < 3; ++i) CHECK(scans[0].sum_k[i] * scans[0].lambdas[i] > BigReal::pi(Precision(64)) * 2L);
  const std::string csv = scan_csv(scans);
  CHECK(csv.rfind("beta,N,lambda,sum_k_diag,decay,exp_coeff,exp_r2,alg_slope,alg_r2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  cfg.ns = {10};
  CHECK_THROWS_AS(run_scan(cfg), DomainError);
}

TEST_CASE("percentage-error chart") {
  std::istringstream in(published_csv());
  const auto series = read_pct_csv(in);
  REQUIRE(series.size() == 5);
  CHECK(series[0].beta == "1");
  CHECK(series[0].points.size() == 5);
  // Published errors shrink in magnitude as N grows.
  for (const auto& s : series) {
    for (std::size_t i = 1; i < s.points.size(); ++i) {
      CHECK(std::fabs(s.points[i].second) < std::fabs(s.points[i - 1].second));
    }
  }
  const std::string svg = render_pct_svg(series);
  CHECK(svg == render_pct_svg(series));
  CHECK(svg.find("width=\"800\" height=\"600\"") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
  CHECK(count == 5);
  CHECK(svg.find("beta = 7/4") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("single-row chart draws a marker") {
  std::istringstream in(std::string(kTable1Header) + "\n1,50,2.0948e-10,2.3695e-10,13.11\n");
  const std::string svg = render_pct_svg(read_pct_csv(in));
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("<polyline") == std::string::npos);
}

TEST_CASE("chart input errors") {
  std::istringstream empty(std::string(kTable1Header) + "\n");
  CHECK_THROWS_AS(render_pct_svg(read_pct_csv(empty)), DomainError);
  std::istringstream none("");
  CHECK_THROWS_AS(read_pct_csv(none), IoError);
  std::istringstream bad_header("beta,N\n");
  CHECK_THROWS_AS(read_pct_csv(bad_header), IoError);
  std::istringstream bad_row(std::string(kTable1Header) + "\n1,50,1e-10,1e-10,0.00\n1,100,1e-15\n");
  try {
    read_pct_csv(bad_row);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
  }
  std::istringstream bad_pct(std::string(kTable1Header) + "\n1,50,1e-10,1e-10,abc\n");
  CHECK_THROWS_WITH_AS(read_pct_csv(bad_pct), doctest::Contains("line 2"), IoError);
  // Failed cells have an empty pct and are skipped.
  std::istringstream skipped(std::string(kTable1Header) + "\n1,50,,2e-10,\n1,100,1e-15,1e-15,1.00\n");
  CHECK(read_pct_csv(skipped).front().points.size() == 1);
}

TEST_CASE("command-line exit codes and output") {
  TempDir dir;
  CHECK(run_cli("predict --beta 1 --N 50", dir.path) == 0);
  CHECK(slurp(dir.path / "out.txt") == "2.36954e-10 eq319\n");
  CHECK(run_cli("predict --beta 2.5 --N 300", dir.path) == 0);
  CHECK(slurp(dir.path / "out.txt") == "1.58192e-169 eq415\n");
  CHECK(run_cli("predict --beta 0.4 --N 100", dir.path) == 2);
  CHECK(slurp(dir.path / "err.txt").find("indeterminate regime") != std::string::npos);
  CHECK(run_cli("predict --beta 1 --N 5:1:1", dir.path) == 2);
  CHECK(run_cli("frobnicate", dir.path) == 2);
  CHECK(run_cli("solve --beta 1 --N 1 --digits 40 --out res", dir.path) == 0);
  CHECK(slurp(dir.path / "out.txt").rfind("beta=1 N=1 lambda=3.81966e-01", 0) == 0);
  CHECK(fs::exists(dir.path / "res" / "store" / "genexp" / "1" / "1"));
  CHECK(run_cli("bound --beta 1 --N 0,1", dir.path) == 0);
  const std::string bound = slurp(dir.path / "out.txt");
  CHECK(bound.find("N=0 bound=1.00000e+00 lambda=1.00000e+00 ratio=1.00000e+00") != std::string::npos);
  CHECK(bound.find("N=1 bound=3.33333e-01 lambda=3.81966e-01 ratio=1.14590e+00") != std::string::npos);
  CHECK(run_cli("polys --beta 1 --N 0 --t -1", dir.path) == 0);
  CHECK(slurp(dir.path / "out.txt").find("exact=1.00000e+00") != std::string::npos);
  CHECK(run_cli("polys --beta 1.5 --N 50 --t -2", dir.path) == 0);
  CHECK(slurp(dir.path / "out.txt").find("formula=eq49") != std::string::npos);
  CHECK(run_cli("plot missing.csv", dir.path) == 4);
  std::ofstream(dir.path / "t.csv") << published_csv();
  CHECK(run_cli("plot t.csv --out chart.svg", dir.path) == 0);
  CHECK(slurp(dir.path / "chart.svg").find("<svg") != std::string::npos);
  std::ofstream(dir.path / "bad.csv") << "beta,N\n";
  CHECK(run_cli("plot bad.csv", dir.path) == 4);
  CHECK(run_cli("solve --beta 1 --N 40 --adaptive --digits 0 --out res --no-cache", dir.path) == 0);
  CHECK(run_cli("table1 --beta 1 --N 4,6 --out tab", dir.path) == 0);
  CHECK(slurp(dir.path / "tab" / "table1.csv").rfind(std::string(kTable1Header) + "\n1,4,", 0) == 0);
}
