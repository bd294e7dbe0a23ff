// hodgecheck: runs verification suites and writes one JSON report.
//
// Exit status: 0 all asserting checks pass, 1 some check failed,
// 2 bad configuration or unknown suite.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hodge/error.hpp"
#include "hodge/suites.hpp"

namespace {

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("VERIFY_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw hodge::Error(hodge::ErrorCode::ConfigInvalid, "VERIFY_SEED: not an integer");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for Hodge bundle characteristic forms"};
  std::string config_path;
  std::vector<std::string> suites;
  std::vector<int> genus;
  std::vector<int> index;
  std::uint64_t seed = 0;
  int samples = 0;
  int trials = -1;
  std::vector<std::string> tols;
  std::string out;
  bool parallel = false;
  bool list = false;

  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--suite", suites, "suite to run (repeatable; default all)");
  app.add_option("--genus", genus, "genus (repeatable)");
  app.add_option("--index", index, "index i (repeatable)");
  auto* seed_opt = app.add_option("--seed", seed, "master seed (fallback: VERIFY_SEED, then 42)");
  auto* samples_opt = app.add_option("--samples", samples, "Monte Carlo / plane samples (>= 100)");
  auto* trials_opt = app.add_option("--trials", trials, "random points or spaces per genus");
  app.add_option("--tol", tols, "tolerance override name=value (repeatable)");
  app.add_option("--out", out, "report path (default stdout)");
  app.add_flag("--parallel", parallel, "run suites concurrently");
  app.add_flag("--list-suites", list, "print suite names and exit");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& s : hodge::known_suites()) std::cout << s << '\n';
    return 0;
  }

  hodge::RunResult result;
  hodge::RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw hodge::Error(hodge::ErrorCode::ConfigInvalid, std::string("<file>: ") + e.what());
      }
      config = hodge::config_from_json(doc);
      if (!doc.contains("seed")) config.seed = env_seed(config.seed);
    } else {
      config.seed = env_seed(config.seed);
    }
    if (!suites.empty()) config.suites = suites;
    if (!genus.empty()) config.genus_list = genus;
    if (!index.empty()) config.index_list = index;
    if (*seed_opt) config.seed = seed;
    if (*samples_opt) config.n_samples = samples;
    if (*trials_opt) config.trials = trials;
    if (!out.empty()) config.output_path = out;
    if (parallel) config.parallel = true;
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw hodge::Error(hodge::ErrorCode::ConfigInvalid, "--tol: expected name=value");
      try {
        config.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
      } catch (const std::exception&) {
        throw hodge::Error(hodge::ErrorCode::ConfigInvalid, "--tol " + t.substr(0, eq) + ": not a number");
      }
    }
    result = hodge::run(config);
  } catch (const hodge::Error& e) {
    std::cerr << "hodgecheck: " << e.what() << '\n';
    return 2;
  }

  const std::string text = result.document.dump(2) + "\n";
  if (config.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(config.output_path);
    if (!file) {
      std::cerr << "hodgecheck: cannot write " << config.output_path << '\n';
      return 2;
    }
    file << text;
  }
  for (const auto& r : result.reports) {
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << r.wall_time_ms << " ms)\n";
  }
  return result.passed ? 0 : 1;
}
