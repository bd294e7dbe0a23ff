#include <doctest.h>

#include <algorithm>
#include <string>

#include "hodge/segre_chern.hpp"
#include "hodge/symmap.hpp"

using namespace hodge;

namespace {

const CheckRecord& find_check(const VerificationReport& rep, const std::string& name) {
  const auto it = std::find_if(rep.checks.begin(), rep.checks.end(),
                               [&](const CheckRecord& c) { return c.name == name; });
  REQUIRE_MESSAGE(it != rep.checks.end(), "missing check " << name);
  return *it;
}

SiegelPoint identity_point(int g) { return SiegelPoint::make(RMatrix::Zero(g, g), RMatrix::Identity(g, g)); }

SiegelPoint random_point(int g, std::uint64_t stream) {
  SplitMix64 rng(derive_seed(41, stream));
  return random_siegel_point(g, rng);
}

}  // namespace

TEST_SUITE("segre_chern") {
  TEST_CASE("chern form structure") {
    for (int g = 1; g <= 3; ++g) {
      const CurvaturePackage pkg = curvature_package(random_point(g, static_cast<std::uint64_t>(g)));
      const ExtForm c = chern_total(pkg, Bundle::DualHodge);
      CHECK(c.scalar_part() == Complex(1, 0));
      const auto parts = split_even_degrees(c, 2 * g);
      for (int k = 0; k <= 2 * g; ++k) {
        CHECK(parts[static_cast<std::size_t>(k)].is_homogeneous(k, k));
        if (k > g) CHECK(parts[static_cast<std::size_t>(k)].max_abs() < 1e-15);
      }
    }
  }

  TEST_CASE("genus one chern form is 1 + a positive (1,1)-term") {
    const CurvaturePackage pkg = curvature_package(identity_point(1));
    const ExtForm c1 = split_even_degrees(chern_total(pkg, Bundle::DualHodge), 1)[1];
    // c_1(E*) = -G, and s_1 = G is the positive representative.
    const LinSubspace line = LinSubspace::whole(1, AmbientTag::SymMaps);
    CHECK(restrict_to_plane(c1, line).real() < 0.0);
    CHECK(restrict_to_plane(-c1, line).real() > 0.0);
  }

  TEST_CASE("low-degree segre forms") {
    for (int g = 1; g <= 3; ++g) {
      const CurvaturePackage pkg = curvature_package(random_point(g, 10 + static_cast<std::uint64_t>(g)));
      const CharacteristicForms inv = segre_by_inverse(pkg, 2);
      const ExtForm& c1 = inv.chern_estar[1];
      const ExtForm c2 = g >= 2 ? inv.chern_estar[2] : ExtForm(g);
      CHECK(max_coefficient_distance(inv.segre_estar[0], ExtForm::one(g)) == 0.0);
      CHECK(max_coefficient_distance(inv.segre_estar[1], -c1) < 1e-15);
      CHECK(max_coefficient_distance(inv.segre_estar[2], wedge(c1, c1) - c2) < 1e-14);

      const CharacteristicForms mom = segre_by_moments(pkg, 2);
      const ExtForm p1 = pkg.g_normalized.trace();
      const ExtForm p2 = multiply(pkg.g_normalized, pkg.g_normalized).trace();
      CHECK(max_coefficient_distance(mom.segre_estar[0], ExtForm::one(g)) == 0.0);
      CHECK(max_coefficient_distance(mom.segre_estar[1], p1) < 1e-15);
      CHECK(max_coefficient_distance(mom.segre_estar[2], (wedge(p1, p1) + p2) * 0.5) < 1e-15);
    }
  }

  TEST_CASE("inverse identity on the total forms") {
    for (int g = 1; g <= 3; ++g) {
      const CurvaturePackage pkg = curvature_package(random_point(g, 20 + static_cast<std::uint64_t>(g)));
      const CharacteristicForms inv = segre_by_inverse(pkg, 2 * g);
      CHECK(max_coefficient_distance(wedge(inv.chern_estar_total(), inv.segre_total()), ExtForm::one(g)) < 1e-12);
    }
  }

  TEST_CASE("moment and inverse routes agree for k <= 2g") {
    for (int g = 1; g <= 3; ++g) {
      for (int t = 0; t < 5; ++t) {
        const CurvaturePackage pkg = curvature_package(random_point(g, 100 * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(t)));
        const CharacteristicForms inv = segre_by_inverse(pkg, 2 * g);
        const CharacteristicForms mom = segre_by_moments(pkg, 2 * g);
        for (int k = 0; k <= 2 * g; ++k) {
          CHECK(max_coefficient_distance(inv.segre_estar[static_cast<std::size_t>(k)],
                                         mom.segre_estar[static_cast<std::size_t>(k)]) < 1e-10);
        }
      }
    }
    CHECK_THROWS_AS(segre_by_moments(curvature_package(identity_point(1)), 3), Error);
  }

  TEST_CASE("quadrature degenerate cases") {
    const CurvaturePackage pkg2 = curvature_package(random_point(2, 30));
    const QuadratureEstimate q0 = segre_by_quadrature(pkg2, 0, 200, 1);
    CHECK(max_coefficient_distance(q0.value, ExtForm::one(2)) == 0.0);

    // g = 1: the fiber has a single line, so every sample is exact.
    const CurvaturePackage pkg1 = curvature_package(random_point(1, 31));
    const QuadratureEstimate q1 = segre_by_quadrature(pkg1, 1, 200, 2);
    CHECK(max_coefficient_distance(q1.value, pkg1.g_normalized(0, 0)) < 1e-15);
    CHECK(q1.max_std_error < 1e-15);

    try {
      segre_by_quadrature(pkg2, 1, 99, 3);
      FAIL("expected BadSampleCount");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadSampleCount);
    }
  }

  TEST_CASE("quadrature matches the moment route within 3 standard errors") {
    const CurvaturePackage pkg = curvature_package(identity_point(2));
    const CharacteristicForms mom = segre_by_moments(pkg, 2);
    const QuadratureEstimate q = segre_by_quadrature(pkg, 2, 100000, 7);
    CHECK(q.n_samples == 100000);
    CHECK(max_z_score(q.value, mom.segre_estar[2], q.std_error, 1e-10) <= 3.0);
  }

  TEST_CASE("quadrature does not depend on the thread count") {
    const CurvaturePackage pkg = curvature_package(random_point(2, 32));
    const QuadratureEstimate a = segre_by_quadrature(pkg, 2, 3000, 9, 1);
    const QuadratureEstimate b = segre_by_quadrature(pkg, 2, 3000, 9, 4);
    CHECK(max_coefficient_distance(a.value, b.value) == 0.0);
    CHECK(a.std_error == b.std_error);
  }

  TEST_CASE("pointwise identity reports") {
    const VerificationReport r1 = check_pointwise_identity(random_point(1, 40), 1e-12);
    CHECK(r1.passed());
    for (int t = 0; t < 20; ++t) {
      CHECK(check_pointwise_identity(random_point(2, 50 + static_cast<std::uint64_t>(t)), 1e-10).passed());
    }
    const VerificationReport r3 = check_pointwise_identity(identity_point(3), 1e-9);
    CHECK(r3.passed());
    CHECK_FALSE(find_check(r3, "chern-product-form-level").asserting);
  }

  TEST_CASE("remark equality") {
    CHECK(check_remark_equality(random_point(2, 60), 1).passed());
    CHECK(check_remark_equality(random_point(3, 61), 2).passed());
    const VerificationReport r3 = check_remark_equality(identity_point(3), 3);
    CHECK(r3.passed());
    CHECK_FALSE(r3.checks.front().asserting);
    CHECK_THROWS_AS(check_remark_equality(identity_point(2), 3), Error);
  }

  TEST_CASE("average of wedge powers") {
    const VerificationReport r0 = check_average_wedge_powers(identity_point(2), 0, 100, 1);
    CHECK(r0.passed());
    CHECK(find_check(r0, "fitted-ratio").measured == doctest::Approx(1.0));

    const VerificationReport r1 = check_average_wedge_powers(random_point(2, 70), 1, 5000, 2);
    CHECK(r1.passed());
    CHECK(find_check(r1, "ratio-positive").measured > 0.0);

    const VerificationReport r2 = check_average_wedge_powers(random_point(2, 71), 2, 100000, 3);
    CHECK(r2.passed());
  }

  TEST_CASE("positivity on random planes") {
    const VerificationReport r = check_positivity_and_vanishing(random_point(2, 80), 1, 300, 4);
    CHECK(r.passed());
    CHECK(find_check(r, "non-negative-on-random-planes").measured >= -1e-10);
  }

  TEST_CASE("c~_3 vanishes on W-perp of span(e1) in genus three") {
    const CurvaturePackage pkg = curvature_package(random_point(3, 81));
    const ExtForm c3 = c_tilde(pkg, 3);
    CMatrix e1 = CMatrix::Zero(1, 3);
    e1(0, 0) = 1.0;
    const LinSubspace y = wperp(LinSubspace::span(e1));
    REQUIRE(y.dim() == 3);
    CHECK(std::abs(restrict_to_plane(c3, y)) < 1e-10);
  }

  TEST_CASE("c~_g is positive on planes containing a full-rank map") {
    SplitMix64 rng(82);
    const int g = 2;
    const CurvaturePackage pkg = curvature_package(random_point(g, 83));
    const ExtForm top = c_tilde(pkg, g);
    for (int t = 0; t < 10; ++t) {
      CMatrix rows(g, g * g);
      rows.row(0) = SymMap(CMatrix::Identity(g, g)).flatten().transpose();
      rows.row(1) = random_sym_map(g, rng).flatten().transpose();
      const LinSubspace plane = LinSubspace::span(rows, AmbientTag::SymMaps);
      CHECK(restrict_to_plane(top, plane).real() > 1e-10);
    }
  }

  TEST_CASE("vanishing report for i = 3") {
    const VerificationReport r = check_positivity_and_vanishing(random_point(3, 84), 3, 100, 5);
    CHECK(r.passed());
    CHECK(find_check(r, "vanishes-on-wperp-planes").measured < 1e-10);
    CHECK(find_check(r, "wperp-evaluation-rank").measured <= 2.0);
  }
}
