#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hodge/report.hpp"

namespace hodge {

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  std::vector<int> genus_list{1, 2, 3};
  std::vector<std::string> suites;
  std::uint64_t seed = 42;
  int n_samples = 1000;
  /// Overrides for the named tolerances in default_tolerances().
  std::map<std::string, double> tolerances;
  std::string output_path;
  /// Index values i (plane dimension); empty means suite defaults.
  std::vector<int> index_list;
  /// Random points or spaces per genus; 0 means suite defaults.
  int trials = 0;
  bool parallel = false;
};

const std::vector<std::string>& known_suites();
const std::map<std::string, double>& default_tolerances();

/// Raises ConfigInvalid naming the offending field.
void validate(const RunConfig& config);
/// Reads the JSON config schema; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);

double tolerance(const RunConfig& config, const std::string& name);

/// One suite over every genus in the config. Raises SuiteUnknown.
VerificationReport run_suite(const std::string& name, const RunConfig& config);

struct RunResult {
  std::vector<VerificationReport> reports;  ///< sorted by suite name
  bool passed = false;
  nlohmann::json document;
};

/// Validates, runs every requested suite (all suites when none are listed)
/// and assembles the report document.
RunResult run(const RunConfig& config);

/// Copy of a report document with the wall_time_ms fields removed.
nlohmann::json strip_timing(nlohmann::json document);

}  // namespace hodge
