#include "hodge/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <set>

#include "hodge/hodge_curvature.hpp"
#include "hodge/segre_chern.hpp"
#include "hodge/slice.hpp"
#include "hodge/symmap.hpp"

namespace hodge {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ConfigInvalid, field + ": " + why);
}

std::uint64_t suite_stream(const std::string& name) {
  const auto& names = known_suites();
  return static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

// Larger is worse for the given record.
double badness(const CheckRecord& r) {
  switch (r.relation) {
    case Relation::AtLeast:
    case Relation::Above:
      return -r.measured;
    case Relation::Equal:
      return std::abs(r.measured - r.tolerance);
    default:
      return r.asserting ? r.measured : std::abs(r.measured);
  }
}

// Keeps, per check name, the record furthest from passing.
void absorb_worst(VerificationReport& into, const VerificationReport& from, const std::string& prefix) {
  for (CheckRecord rec : from.checks) {
    rec.name = prefix + rec.name;
    auto it = std::find_if(into.checks.begin(), into.checks.end(),
                           [&](const CheckRecord& c) { return c.name == rec.name; });
    if (it == into.checks.end()) {
      into.checks.push_back(std::move(rec));
      continue;
    }
    const bool worse = (it->passed && !rec.passed) ||
                       (it->passed == rec.passed && badness(rec) > badness(*it));
    if (worse) *it = std::move(rec);
  }
}

std::string gprefix(int g) { return "g" + std::to_string(g) + "/"; }

int trials_or(const RunConfig& c, int fallback) { return c.trials > 0 ? c.trials : fallback; }

std::vector<int> indices_or(const RunConfig& c, std::vector<int> fallback) {
  return c.index_list.empty() ? fallback : c.index_list;
}

std::vector<SiegelPoint> random_points(int g, int count, std::uint64_t seed) {
  std::vector<SiegelPoint> out;
  for (int t = 0; t < count; ++t) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    out.push_back(random_siegel_point(g, rng));
  }
  return out;
}

VerificationReport suite_forms_identity(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  const double tol_id = tolerance(c, "identity");
  const double tol_routes = tolerance(c, "routes");
  for (int g : c.genus_list) {
    const std::uint64_t gs = derive_seed(seed, static_cast<std::uint64_t>(g));
    const auto points = random_points(g, trials_or(c, 20), gs);
    for (std::size_t t = 0; t < points.size(); ++t) {
      // The Monte Carlo route runs on the first point only.
      QuadratureOptions quad;
      if (t == 0) {
        quad.n_samples = c.n_samples;
        quad.seed = derive_seed(gs, 1'000'000);
        quad.sigmas = tolerance(c, "sigmas");
      }
      absorb_worst(rep, check_pointwise_identity(points[t], tol_id), gprefix(g) + "identity/");
      absorb_worst(rep, check_route_agreement(points[t], tol_routes, quad), gprefix(g) + "routes/");
    }
  }
  return rep;
}

VerificationReport suite_remark(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  for (int g : c.genus_list) {
    const auto points = random_points(g, trials_or(c, 20), derive_seed(seed, static_cast<std::uint64_t>(g)));
    for (int k : indices_or(c, {1, 2, 3})) {
      if (k > g) continue;
      for (const auto& tau : points) {
        absorb_worst(rep, check_remark_equality(tau, k, tolerance(c, "remark")),
                     gprefix(g) + "k" + std::to_string(k) + "/");
      }
    }
  }
  return rep;
}

VerificationReport suite_positivity(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  for (int g : c.genus_list) {
    const std::uint64_t gs = derive_seed(seed, static_cast<std::uint64_t>(g));
    const auto points = random_points(g, trials_or(c, 5), gs);
    std::vector<int> defaults;
    for (int i = 1; i <= g; ++i) defaults.push_back(i);
    for (int i : indices_or(c, defaults)) {
      if (i > g) continue;
      const std::string prefix = gprefix(g) + "i" + std::to_string(i) + "/";
      for (std::size_t t = 0; t < points.size(); ++t) {
        absorb_worst(rep,
                     check_positivity_and_vanishing(points[t], i, c.n_samples,
                                                    derive_seed(gs, 100 + t), tolerance(c, "positivity")),
                     prefix);
      }
      if (i >= 3 && i * (i - 1) / 2 >= i) {
        // Exact evaluation ranks on W-perp: never injective on i-planes.
        SplitMix64 rng(derive_seed(gs, 7));
        int witnesses = 0;
        for (int t = 0; t < 3; ++t) {
          RationalMatrix w(g - i + 1, g);
          while (true) {
            for (int r = 0; r < w.rows(); ++r) {
              for (int col = 0; col < g; ++col) w(r, col) = Rational(static_cast<long>(random_int(rng, 10)));
            }
            if (rank(w) == w.rows()) break;
          }
          if (!hypothesis_check_exact(wperp_exact(w), i, 100, derive_seed(gs, 200 + t)).holds) ++witnesses;
        }
        rep.add(prefix + "wperp-exact-witnesses", "evaluation maps on W-perp have rank at most i-1",
                witnesses, 0, Relation::Equal, "3 spaces x 100 exact v-samples");
      }
    }
  }
  return rep;
}

VerificationReport suite_average_wedge(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  for (int g : c.genus_list) {
    const std::uint64_t gs = derive_seed(seed, static_cast<std::uint64_t>(g));
    const SiegelPoint tau = random_points(g, 1, gs).front();
    for (int k : indices_or(c, {1, 2, 3})) {
      if (k > std::min(g, 3)) continue;
      rep.merge(check_average_wedge_powers(tau, k, c.n_samples, derive_seed(gs, 10 + k), tolerance(c, "sigmas")),
                gprefix(g) + "k" + std::to_string(k) + "/");
    }
  }
  return rep;
}

VerificationReport suite_curvature_fd(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  const double step = tolerance(c, "fd_step");
  for (int g : c.genus_list) {
    double worst = 0.0;
    const auto points = random_points(g, trials_or(c, 20), derive_seed(seed, static_cast<std::uint64_t>(g)));
    for (const auto& tau : points) worst = std::max(worst, curvature_fd_relative_error(tau, step));
    rep.add(gprefix(g) + "relative-error", "curvature equals -1/4 (d tau) Y^-1 (conj d tau) Y^-1", worst,
            tolerance(c, "curvature_fd"), Relation::Below,
            "nested central differences of Im(tau)^-1, step " + std::to_string(step));
  }
  return rep;
}

VerificationReport suite_wperp_witness(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  for (int g : c.genus_list) {
    const std::uint64_t gs = derive_seed(seed, static_cast<std::uint64_t>(g));
    std::vector<int> defaults{1, 2, 3};
    if (g == 4) defaults.push_back(4);
    for (int i : indices_or(c, defaults)) {
      if (i > g) continue;
      const std::string prefix = gprefix(g) + "i" + std::to_string(i) + "/";
      if (i <= 2) {
        rep.merge(small_index_suite(g, i, trials_or(c, 50), derive_seed(gs, static_cast<std::uint64_t>(i))), prefix);
      } else if (g <= 5) {
        rep.merge(wperp_witness_suite(g, i, trials_or(c, 50), derive_seed(gs, static_cast<std::uint64_t>(i))), prefix);
      }
    }
  }
  return rep;
}

VerificationReport suite_rank_locus(const RunConfig& c, std::uint64_t seed) {
  VerificationReport rep;
  for (int g : c.genus_list) {
    for (int k = 1; k < g; ++k) {
      rep.merge(rank_locus_suite(g, k, trials_or(c, 100), derive_seed(seed, static_cast<std::uint64_t>(g * 16 + k))),
                gprefix(g) + "k" + std::to_string(k) + "/");
    }
  }
  return rep;
}

VerificationReport suite_slice(const RunConfig& c, std::uint64_t seed) {
  const int max_genus = *std::max_element(c.genus_list.begin(), c.genus_list.end());
  return slice_suite(trials_or(c, 100), max_genus, seed);
}

std::vector<int> int_list(const json& v, const std::string& field) {
  if (!v.is_array()) invalid(field, "must be an array of integers");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) invalid(field, "must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"average-wedge", "curvature-fd", "forms-identity",
                                              "positivity-vanishing", "rank-locus", "remark",
                                              "slice-61", "symmap-thm25"};
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"identity", 1e-9}, {"routes", 1e-10},    {"remark", 1e-9}, {"positivity", 1e-10},
      {"curvature_fd", 1e-6}, {"fd_step", 1e-5}, {"sigmas", 3.0}};
  return tols;
}

double tolerance(const RunConfig& config, const std::string& name) {
  if (auto it = config.tolerances.find(name); it != config.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

void validate(const RunConfig& config) {
  if (config.genus_list.empty()) invalid("genus", "at least one genus is required");
  for (int g : config.genus_list) {
    if (g < 1) invalid("genus", "every genus must be >= 1");
  }
  if (config.n_samples < 100) invalid("samples", "must be >= 100");
  for (const auto& [name, value] : config.tolerances) {
    if (!default_tolerances().count(name)) invalid("tolerances." + name, "unknown tolerance");
    if (!(value > 0.0) || !std::isfinite(value)) invalid("tolerances." + name, "must be positive");
  }
  for (int i : config.index_list) {
    if (i < 1) invalid("index", "every index must be >= 1");
  }
  if (config.trials < 0) invalid("trials", "must be >= 0");
  for (const auto& s : config.suites) {
    const auto& names = known_suites();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw Error(ErrorCode::SuiteUnknown, "no suite named '" + s + "'");
    }
  }
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) invalid("<root>", "config must be a JSON object");
  static const std::set<std::string> keys{"schema_version", "genus", "suites",   "seed",     "samples",
                                          "tolerances",     "output", "index",   "trials",   "parallel"};
  for (const auto& [key, _] : doc.items()) {
    if (!keys.count(key)) invalid(key, "unknown field");
  }
  RunConfig c;
  if (doc.contains("schema_version")) {
    const auto& v = doc["schema_version"];
    if (!v.is_number_integer() || v.get<int>() != kReportSchemaVersion) {
      invalid("schema_version", "must be " + std::to_string(kReportSchemaVersion));
    }
  }
  if (doc.contains("genus")) c.genus_list = int_list(doc["genus"], "genus");
  if (doc.contains("index")) c.index_list = int_list(doc["index"], "index");
  if (doc.contains("suites")) {
    const auto& v = doc["suites"];
    if (!v.is_array()) invalid("suites", "must be an array of strings");
    for (const auto& s : v) {
      if (!s.is_string()) invalid("suites", "must be an array of strings");
      c.suites.push_back(s.get<std::string>());
    }
  }
  if (doc.contains("seed")) {
    const auto& v = doc["seed"];
    if (!v.is_number_unsigned()) invalid("seed", "must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("samples")) {
    if (!doc["samples"].is_number_integer()) invalid("samples", "must be an integer");
    c.n_samples = doc["samples"].get<int>();
  }
  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer()) invalid("trials", "must be an integer");
    c.trials = doc["trials"].get<int>();
  }
  if (doc.contains("tolerances")) {
    const auto& v = doc["tolerances"];
    if (!v.is_object()) invalid("tolerances", "must be an object of numbers");
    for (const auto& [name, value] : v.items()) {
      if (!value.is_number()) invalid("tolerances." + name, "must be a number");
      c.tolerances[name] = value.get<double>();
    }
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) invalid("output", "must be a string");
    c.output_path = doc["output"].get<std::string>();
  }
  if (doc.contains("parallel")) {
    if (!doc["parallel"].is_boolean()) invalid("parallel", "must be a boolean");
    c.parallel = doc["parallel"].get<bool>();
  }
  validate(c);
  return c;
}

json config_to_json(const RunConfig& config) {
  json tols = json::object();
  for (const auto& [name, value] : config.tolerances) tols[name] = value;
  return json{{"schema_version", kReportSchemaVersion},
              {"genus", config.genus_list},
              {"suites", config.suites},
              {"seed", config.seed},
              {"samples", config.n_samples},
              {"tolerances", tols},
              {"index", config.index_list},
              {"trials", config.trials}};
}

VerificationReport run_suite(const std::string& name, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = derive_seed(config.seed, suite_stream(name));
  VerificationReport rep;
  if (name == "forms-identity") {
    rep = suite_forms_identity(config, seed);
  } else if (name == "remark") {
    rep = suite_remark(config, seed);
  } else if (name == "positivity-vanishing") {
    rep = suite_positivity(config, seed);
  } else if (name == "average-wedge") {
    rep = suite_average_wedge(config, seed);
  } else if (name == "curvature-fd") {
    rep = suite_curvature_fd(config, seed);
  } else if (name == "symmap-thm25") {
    rep = suite_wperp_witness(config, seed);
  } else if (name == "rank-locus") {
    rep = suite_rank_locus(config, seed);
  } else if (name == "slice-61") {
    rep = suite_slice(config, seed);
  } else {
    throw Error(ErrorCode::SuiteUnknown, "no suite named '" + name + "'");
  }
  rep.suite = name;
  rep.params = config_to_json(config);
  rep.params.erase("suites");
  rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
  return rep;
}

RunResult run(const RunConfig& config) {
  validate(config);
  std::vector<std::string> names = config.suites.empty() ? known_suites() : config.suites;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  RunResult result;
  if (config.parallel) {
    std::vector<std::future<VerificationReport>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, run_suite, n, config));
    for (auto& j : jobs) result.reports.push_back(j.get());
  } else {
    for (const auto& n : names) result.reports.push_back(run_suite(n, config));
  }

  result.passed = std::all_of(result.reports.begin(), result.reports.end(),
                              [](const VerificationReport& r) { return r.passed(); });
  json reports = json::array();
  for (const auto& r : result.reports) reports.push_back(to_json(r));
  RunConfig echoed = config;
  echoed.suites = names;
  result.document = json{{"schema_version", kReportSchemaVersion},
                         {"config", config_to_json(echoed)},
                         {"passed", result.passed},
                         {"reports", reports}};
  return result;
}

json strip_timing(json document) {
  if (document.contains("reports")) {
    for (auto& r : document["reports"]) r.erase("wall_time_ms");
  }
  return document;
}

}  // namespace hodge
