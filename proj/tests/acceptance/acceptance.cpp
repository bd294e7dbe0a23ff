// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [path-to-hodgecheck]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hodge/hodge_curvature.hpp"
#include "hodge/segre_chern.hpp"
#include "hodge/slice.hpp"
#include "hodge/suites.hpp"
#include "hodge/symmap.hpp"

using namespace hodge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << what << std::endl;
  if (!ok) ++failures;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

double measured(const VerificationReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return c.measured;
  }
  std::cerr << "missing check " << name << " in " << rep.suite << '\n';
  std::exit(2);
}

SiegelPoint point(int g, std::uint64_t stream) {
  SplitMix64 rng(derive_seed(20240601, stream));
  return random_siegel_point(g, rng);
}

std::uint64_t stream(int g, int t) { return static_cast<std::uint64_t>(g) * 1000 + static_cast<std::uint64_t>(t); }

void criteria_1_and_2() {
  const auto start = Clock::now();
  double identity = 0.0;
  double routes = 0.0;
  bool ok_identity = true;
  bool ok_routes = true;
  for (int g = 1; g <= 3; ++g) {
    for (int t = 0; t < 20; ++t) {
      const SiegelPoint tau = point(g, stream(g, t));
      const VerificationReport id = check_pointwise_identity(tau, 1e-9);
      ok_identity = ok_identity && id.passed();
      for (const char* name : {"inverse-series", "inverse-series-right", "moment-formula"}) {
        identity = std::max(identity, measured(id, name));
      }
      const VerificationReport rt = check_route_agreement(tau, 1e-10);
      ok_routes = ok_routes && rt.passed();
      routes = std::max(routes, measured(rt, "moments-vs-inverse"));
    }
  }
  const double elapsed = seconds_since(start);
  verdict(1, ok_identity && identity < 1e-9 && elapsed < 30.0,
          "c(E*) ^ s(E*) = 1 pointwise, g = 1..3, 20 points each: max deviation " + sci(identity) + " (< 1e-9), " +
              std::to_string(elapsed) + " s (< 30 s)");

  QuadratureOptions quad;
  quad.n_samples = 100000;
  quad.seed = 77;
  const VerificationReport q = check_route_agreement(point(2, stream(2, 0)), 1e-10, quad);
  double worst_z = 0.0;
  for (int k = 0; k <= 3; ++k) worst_z = std::max(worst_z, measured(q, "quadrature-k" + std::to_string(k)));
  verdict(2, ok_routes && routes < 1e-10 && q.passed() && worst_z <= 3.0,
          "moment vs inverse Segre forms max deviation " + sci(routes) +
              " (< 1e-10); quadrature g = 2, k <= 3, 1e5 samples: max z-score " + std::to_string(worst_z) +
              " (<= 3)");
}

void criterion_3() {
  double worst = 0.0;
  for (int g = 1; g <= 3; ++g) {
    for (int t = 0; t < 20; ++t) worst = std::max(worst, curvature_fd_relative_error(point(g, 5000 + stream(g, t)), 1e-5));
  }
  verdict(3, worst < 1e-6,
          "analytic curvature vs finite differences, step 1e-5, 20 points per g <= 3: relative error " + sci(worst) +
              " (< 1e-6)");
}

void criterion_4() {
  double asserted = 0.0;
  double reported = 0.0;
  bool ok = true;
  for (int g = 1; g <= 3; ++g) {
    for (int t = 0; t < 20; ++t) {
      const SiegelPoint tau = point(g, 6000 + stream(g, t));
      for (int k = 1; k <= std::min(2, g); ++k) {
        const VerificationReport r = check_remark_equality(tau, k, 1e-9);
        ok = ok && r.passed();
        asserted = std::max(asserted, r.checks.front().measured);
      }
      if (g == 3) reported = std::max(reported, check_remark_equality(tau, 3).checks.front().measured);
    }
  }
  verdict(4, ok && asserted < 1e-9,
          "c_k(E) = s_k(E*) for k = 1, 2, g <= 3: max deviation " + sci(asserted) +
              " (< 1e-9); k = 3 difference reported: " + sci(reported));
}

void criterion_5() {
  double worst = INFINITY;
  bool ok = true;
  for (int g = 1; g <= 3; ++g) {
    for (int k = 1; k <= g; ++k) {
      for (int t = 0; t < 5; ++t) {
        const VerificationReport r =
            check_positivity_and_vanishing(point(g, 7000 + stream(g, t)), k, 1000, derive_seed(5, stream(g, 10 * k + t)));
        ok = ok && r.passed();
        worst = std::min(worst, measured(r, "non-negative-on-random-planes"));
      }
    }
  }
  verdict(5, ok && worst >= -1e-10,
          "c~_k on 1000 random k-planes, k <= g <= 3, 5 points: min value " + sci(worst) + " (>= -1e-10)");
}

void criterion_6() {
  double worst_value = 0.0;
  double worst_rank = 0.0;
  int witnesses = 0;
  bool ok = true;
  for (int g : {3, 4}) {
    for (int t = 0; t < 3; ++t) {
      const VerificationReport r =
          check_positivity_and_vanishing(point(g, 8000 + stream(g, t)), 3, 1000, derive_seed(6, stream(g, t)));
      ok = ok && r.passed();
      worst_value = std::max(worst_value, measured(r, "vanishes-on-wperp-planes"));
      worst_rank = std::max(worst_rank, measured(r, "wperp-evaluation-rank"));
    }
    SplitMix64 rng(derive_seed(66, static_cast<std::uint64_t>(g)));
    for (int t = 0; t < 5; ++t) {
      RationalMatrix w(g - 2, g);
      do {
        for (int r = 0; r < w.rows(); ++r) {
          for (int c = 0; c < g; ++c) w(r, c) = Rational(static_cast<long>(random_int(rng, 10)));
        }
      } while (rank(w) != w.rows());
      const HypothesisResult h = hypothesis_check_exact(wperp_exact(w), 3, 100, derive_seed(67, stream(g, t)));
      if (!h.holds) ++witnesses;
      worst_rank = std::max(worst_rank, static_cast<double>(h.max_rank));
    }
  }
  verdict(6, ok && worst_value < 1e-10 && worst_rank <= 2 && witnesses == 0,
          "g in {3, 4}, i = 3: |c~_3| on W-perp planes " + sci(worst_value) + " (< 1e-10); max rank(e_v | W-perp) " +
              std::to_string(static_cast<int>(worst_rank)) + " (<= 2) over exact samples; witnesses " +
              std::to_string(witnesses));
}

void criterion_7() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (auto [g, i] : {std::pair{3, 3}, std::pair{4, 3}, std::pair{5, 3}, std::pair{4, 4}}) {
    const VerificationReport r = wperp_witness_suite(g, i, 50, derive_seed(7, static_cast<std::uint64_t>(10 * g + i)), 100);
    ok = ok && r.passed() && measured(r, "wperp-dimension-errors") == 0 && measured(r, "wperp-witnesses") == 0 &&
         measured(r, "perturbed-witnesses") == 50 && measured(r, "generic-witnesses") == 50;
    detail += " (" + std::to_string(g) + "," + std::to_string(i) + ")";
  }
  for (int g = 3; g <= 5; ++g) {
    for (int i = 1; i <= 2; ++i) {
      ok = ok && small_index_suite(g, i, 50, derive_seed(8, static_cast<std::uint64_t>(10 * g + i))).passed();
    }
  }
  const double elapsed = seconds_since(start);
  verdict(7, ok && elapsed < 60.0,
          "W-perp classification suites" + detail + ": dimensions exact, no witness on W-perp, 50/50 perturbed and " +
              "generic witnesses, i in {1, 2} always witnessed; " + std::to_string(elapsed) + " s (< 60 s)");
}

void criterion_8() {
  double disagreements = 0.0;
  bool ok = true;
  for (int g = 2; g <= 4; ++g) {
    for (int k = 1; k < g; ++k) {
      const VerificationReport r = rank_locus_suite(g, k, 100, derive_seed(9, static_cast<std::uint64_t>(10 * g + k)));
      ok = ok && r.passed();
      disagreements += measured(r, "disagreements");
    }
  }
  verdict(8, ok && disagreements == 0,
          "rank-locus predicate vs minor derivatives, 100 exact pairs per (g, k), g <= 4: disagreements " +
              std::to_string(static_cast<int>(disagreements)));
}

void criterion_9() {
  const VerificationReport r = slice_suite(100, 4, 10);
  verdict(9, r.passed(),
          "100 random slices, g <= 4: difference residual " + sci(measured(r, "difference-in-wperp")) +
              " (< 1e-12), image distance " + sci(measured(r, "image-distance")) + " (< 1e-10), |J^2 + I| " +
              sci(measured(r, "j-squared")) + ", symplectic defect " + sci(measured(r, "j-symplectic")) +
              " (< 1e-10)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_10(const char* cli) {
  const std::string config = "acceptance_determinism_config.json";
  {
    std::ofstream out(config);
    out << R"({"schema_version": 1, "genus": [1, 2, 3], "seed": 1234, "samples": 1000, "trials": 5})";
  }
  bool ok = true;
  std::string how;
  if (cli != nullptr) {
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      const std::string out = "acceptance_determinism_" + std::to_string(run) + ".json";
      const std::string cmd = std::string("\"") + cli + "\" --config " + config + " --out " + out + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      ok = ok && status == 0;
      reports[run] = strip_timing(nlohmann::json::parse(read_file(out))).dump();
    }
    ok = ok && reports[0] == reports[1];
    how = "two CLI runs over all suites";
  } else {
    const RunConfig c = config_from_json(nlohmann::json::parse(read_file(config)));
    ok = strip_timing(run(c).document).dump() == strip_timing(run(c).document).dump();
    how = "two in-process runs over all suites";
  }
  verdict(10, ok, how + " with identical config and seed give byte-identical reports (timing removed)");
}

}  // namespace

int main(int argc, char** argv) {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(argc > 1 ? argv[1] : nullptr);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
