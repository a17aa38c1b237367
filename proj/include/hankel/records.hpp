#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hankel/moments.hpp"

namespace hankel {

inline constexpr int kSchemaVersion = 1;

/// One solved (weight, beta, N) cell. Eigenvalues and bounds are decimal
/// strings so that values such as 1e-169 survive serialisation intact.
struct ExperimentRecord {
  int schema_version = kSchemaVersion;
  std::string weight;
  std::string beta;
  long n = 0;
  long digits = 0;
  std::optional<std::string> lambda_numeric;
  std::optional<std::string> lambda_theory;
  std::optional<std::string> lower_bound;
  int trusted_digits = 0;
  int sweeps = 0;
  double wall_time_s = 0.0;
  std::string created_at;
};

nlohmann::json to_json(const ExperimentRecord& r);
/// Throws IoError listing every schema violation.
ExperimentRecord record_from_json(const nlohmann::json& j);
/// Schema violations of a candidate record; empty when valid.
std::vector<std::string> validate_record(const nlohmann::json& j);

/// 100 (theory - numeric) / numeric from the full-precision strings, or
/// nothing when either value is missing.
std::optional<double> pct_error(const ExperimentRecord& r);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// Directory-per-key record store: root/weight/beta/N/digits.json.
/// Writes go through a temporary file and a rename, so concurrent writers
/// never expose a partial document.
class ResultStore {
 public:
  explicit ResultStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path path_for(const std::string& weight, const std::string& beta, long n, long digits) const;

  void put(const ExperimentRecord& r) const;
  /// The stored record with the most digits for (weight, beta, N).
  std::optional<ExperimentRecord> best(const std::string& weight, const std::string& beta, long n) const;

 private:
  std::filesystem::path root_;
};

/// Path component for a beta string ("3/2" -> "3_2").
std::string beta_key(const std::string& beta);

/// Beta string stored in records for a weight ("-" for the fixed weights).
std::string beta_label(const WeightFamily& w);

}  // namespace hankel
