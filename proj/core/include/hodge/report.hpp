#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hodge {

/// How `measured` is compared with `tolerance`.
enum class Relation { Below, AtMost, AtLeast, Above, Equal };

struct CheckRecord {
  std::string name;
  std::string anchor;  ///< the mathematical statement the check exercises
  double measured = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::Below;
  bool passed = false;
  bool asserting = true;  ///< report-only checks never affect the verdict
  std::string notes;
};

struct VerificationReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  std::int64_t wall_time_ms = 0;

  /// Conjunction over asserting checks.
  bool passed() const;

  /// Records a check, deciding `passed` from the relation.
  CheckRecord& add(std::string name, std::string anchor, double measured, double tolerance,
                   Relation relation, std::string notes = {});
  /// Records a report-only measurement.
  CheckRecord& note(std::string name, std::string anchor, double measured, std::string notes = {});
  /// Appends every check of `other`, prefixing names.
  void merge(const VerificationReport& other, const std::string& prefix);
};

bool satisfies(double measured, double tolerance, Relation relation);
const char* to_string(Relation relation) noexcept;

nlohmann::json to_json(const CheckRecord& check);
nlohmann::json to_json(const VerificationReport& report);

}  // namespace hodge
