#include "hodge/report.hpp"

#include <algorithm>
#include <cmath>

namespace hodge {

bool satisfies(double measured, double tolerance, Relation relation) {
  if (std::isnan(measured)) return false;
  switch (relation) {
    case Relation::Below: return measured < tolerance;
    case Relation::AtMost: return measured <= tolerance;
    case Relation::AtLeast: return measured >= tolerance;
    case Relation::Above: return measured > tolerance;
    case Relation::Equal: return measured == tolerance;
  }
  return false;
}

const char* to_string(Relation relation) noexcept {
  switch (relation) {
    case Relation::Below: return "<";
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
    case Relation::Above: return ">";
    case Relation::Equal: return "==";
  }
  return "?";
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return !c.asserting || c.passed; });
}

CheckRecord& VerificationReport::add(std::string name, std::string anchor, double measured,
                                     double tolerance, Relation relation, std::string notes) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.anchor = std::move(anchor);
  rec.measured = measured;
  rec.tolerance = tolerance;
  rec.relation = relation;
  rec.passed = satisfies(measured, tolerance, relation);
  rec.notes = std::move(notes);
  checks.push_back(std::move(rec));
  return checks.back();
}

CheckRecord& VerificationReport::note(std::string name, std::string anchor, double measured,
                                      std::string notes) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.anchor = std::move(anchor);
  rec.measured = measured;
  rec.tolerance = 0.0;
  rec.relation = Relation::AtLeast;
  rec.passed = true;
  rec.asserting = false;
  rec.notes = std::move(notes);
  checks.push_back(std::move(rec));
  return checks.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (CheckRecord rec : other.checks) {
    rec.name = prefix + rec.name;
    checks.push_back(std::move(rec));
  }
}

nlohmann::json to_json(const CheckRecord& check) {
  // Non-finite values are not representable in JSON; keep them as strings.
  auto number = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  };
  return nlohmann::json{{"name", check.name},
                        {"anchor", check.anchor},
                        {"measured", number(check.measured)},
                        {"tolerance", number(check.tolerance)},
                        {"relation", to_string(check.relation)},
                        {"passed", check.passed},
                        {"asserting", check.asserting},
                        {"notes", check.notes}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  return nlohmann::json{{"suite", report.suite},
                        {"params", report.params},
                        {"checks", checks},
                        {"passed", report.passed()},
                        {"wall_time_ms", report.wall_time_ms}};
}

}  // namespace hodge
