#include "hankel/records.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "hankel/bigreal.hpp"
#include "hankel/errors.hpp"

namespace hankel {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRequired[] = {"schema_version", "weight",         "beta",  "n",           "digits",
                                     "lambda_numeric", "lambda_theory",  "lower_bound", "trusted_digits",
                                     "sweeps",         "wall_time_s",    "created_at"};

bool is_decimal_string(const std::string& s) {
  try {
    const BigReal v = BigReal::parse(s, Precision(64));
    return v.is_finite();
  } catch (const DomainError&) {
    return false;
  }
}

nlohmann::json optional_string(const std::optional<std::string>& s) {
  return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
}

std::optional<std::string> read_optional(const nlohmann::json& j, const char* key) {
  if (j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

}  // namespace

nlohmann::json to_json(const ExperimentRecord& r) {
  nlohmann::json j;
  j["schema_version"] = r.schema_version;
  j["weight"] = r.weight;
  j["beta"] = r.beta;
  j["n"] = r.n;
  j["digits"] = r.digits;
  j["lambda_numeric"] = optional_string(r.lambda_numeric);
  j["lambda_theory"] = optional_string(r.lambda_theory);
  j["lower_bound"] = optional_string(r.lower_bound);
  j["trusted_digits"] = r.trusted_digits;
  j["sweeps"] = r.sweeps;
  j["wall_time_s"] = r.wall_time_s;
  j["created_at"] = r.created_at;
  return j;
}

std::vector<std::string> validate_record(const nlohmann::json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"record is not a JSON object"};
  for (const char* key : kRequired) {
    if (!j.contains(key)) errors.push_back(std::string("missing field '") + key + "'");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kRequired) known = known || key == k;
    if (!known) errors.push_back("unknown field '" + key + "'");
  }
  if (!errors.empty()) return errors;

  auto require_int = [&](const char* key, long min) {
    if (!j[key].is_number_integer() || j[key].get<long>() < min) {
      errors.push_back(std::string("'") + key + "' must be an integer >= " + std::to_string(min));
    }
  };
  require_int("schema_version", 1);
  if (j["schema_version"].is_number_integer() && j["schema_version"].get<int>() != kSchemaVersion) {
    errors.push_back("unsupported schema_version " + j["schema_version"].dump());
  }
  require_int("n", 0);
  require_int("digits", 1);
  require_int("trusted_digits", 0);
  require_int("sweeps", 0);
  for (const char* key : {"weight", "beta", "created_at"}) {
    if (!j[key].is_string() || j[key].get<std::string>().empty()) {
      errors.push_back(std::string("'") + key + "' must be a non-empty string");
    }
  }
  if (!j["wall_time_s"].is_number() || j["wall_time_s"].get<double>() < 0.0) {
    errors.push_back("'wall_time_s' must be a non-negative number");
  }
  for (const char* key : {"lambda_numeric", "lambda_theory", "lower_bound"}) {
    const auto& v = j[key];
    if (v.is_null()) continue;
    if (!v.is_string() || !is_decimal_string(v.get<std::string>())) {
      errors.push_back(std::string("'") + key + "' must be a decimal string or null");
    }
  }
  if (j["lambda_numeric"].is_string() && is_decimal_string(j["lambda_numeric"].get<std::string>())) {
    if (!(BigReal::parse(j["lambda_numeric"].get<std::string>(), Precision(64)) > 0L)) {
      errors.push_back("'lambda_numeric' must be positive");
    }
  }
  return errors;
}

ExperimentRecord record_from_json(const nlohmann::json& j) {
  const auto errors = validate_record(j);
  if (!errors.empty()) {
    std::string msg = "invalid experiment record:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw IoError(msg);
  }
  ExperimentRecord r;
  r.schema_version = j["schema_version"].get<int>();
  r.weight = j["weight"].get<std::string>();
  r.beta = j["beta"].get<std::string>();
  r.n = j["n"].get<long>();
  r.digits = j["digits"].get<long>();
  r.lambda_numeric = read_optional(j, "lambda_numeric");
  r.lambda_theory = read_optional(j, "lambda_theory");
  r.lower_bound = read_optional(j, "lower_bound");
  r.trusted_digits = j["trusted_digits"].get<int>();
  r.sweeps = j["sweeps"].get<int>();
  r.wall_time_s = j["wall_time_s"].get<double>();
  r.created_at = j["created_at"].get<std::string>();
  return r;
}

std::optional<double> pct_error(const ExperimentRecord& r) {
  if (!r.lambda_numeric || !r.lambda_theory) return std::nullopt;
  const Precision p(256);
  const BigReal num = BigReal::parse(*r.lambda_numeric, p);
  const BigReal th = BigReal::parse(*r.lambda_theory, p);
  return ((th - num) / num * 100L).to_double();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string beta_key(const std::string& beta) {
  std::string out = beta;
  for (char& c : out) {
    if (c == '/') c = '_';
  }
  return out;
}

std::string beta_label(const WeightFamily& w) {
  if (const auto* g = std::get_if<GeneralizedExp>(&w)) return g->beta.to_string();
  return "-";
}

ResultStore::ResultStore(fs::path root) : root_(std::move(root)) {}

fs::path ResultStore::path_for(const std::string& weight, const std::string& beta, long n, long digits) const {
  return root_ / weight / beta_key(beta) / std::to_string(n) / (std::to_string(digits) + ".json");
}

void ResultStore::put(const ExperimentRecord& r) const {
  const auto errors = validate_record(to_json(r));
  if (!errors.empty()) throw IoError("refusing to store invalid record: " + errors.front());
  const fs::path target = path_for(r.weight, r.beta, r.n, r.digits);
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());

  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << ::getpid() << "." << std::this_thread::get_id() << "."
           << counter++;
  const fs::path tmp = target.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << to_json(r).dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move record into place at " + target.string());
  }
}

std::optional<ExperimentRecord> ResultStore::best(const std::string& weight, const std::string& beta, long n) const {
  const fs::path dir = root_ / weight / beta_key(beta) / std::to_string(n);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return std::nullopt;
  std::optional<ExperimentRecord> out;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    if (!in) throw IoError("cannot read " + entry.path().string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed record " + entry.path().string() + ": " + e.what());
    }
    ExperimentRecord r = record_from_json(j);
    if (!out || r.digits > out->digits) out = std::move(r);
  }
  return out;
}

}  // namespace hankel
