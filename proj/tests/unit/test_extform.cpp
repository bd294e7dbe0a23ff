#include <doctest.h>

#include <bit>
#include <vector>

#include "hodge/extform.hpp"

using namespace hodge;

namespace {

using Mask = ExtForm::Mask;

ExtForm dt(int g, int a, int b) { return ExtForm::generator(g, generator_index(g, a, b)); }
ExtForm dtbar(int g, int a, int b) { return ExtForm::generator(g, generator_index(g, a, b), true); }

Complex gaussian(SplitMix64& rng) { return random_complex_gaussian(1, 1, rng)(0, 0); }

ExtForm random_form(int g, int terms, SplitMix64& rng, bool even_only = false) {
  const Mask full = (Mask{1} << generator_count(g)) - 1;
  ExtForm f(g);
  for (int t = 0; t < terms; ++t) {
    const Mask hol = static_cast<Mask>(rng()) & full;
    const Mask anti = static_cast<Mask>(rng()) & full;
    if (even_only && (std::popcount(hol) + std::popcount(anti)) % 2 != 0) continue;
    f.add_term(hol, anti, gaussian(rng));
  }
  return f;
}

ExtForm random_homogeneous(int g, int p, int q, int terms, SplitMix64& rng) {
  ExtForm f(g);
  ExtForm pieces = random_form(g, 8 * terms, rng);
  for (const auto& [key, c] : pieces.terms()) {
    if (std::popcount(key.hol) == p && std::popcount(key.anti) == q) f.add_term(key.hol, key.anti, c);
  }
  return f;
}

// Random 1-form sum_j c_j d tau_j.
ExtForm random_one_form(int g, SplitMix64& rng) {
  ExtForm f(g);
  for (int j = 0; j < generator_count(g); ++j) f += ExtForm::generator(g, j) * gaussian(rng);
  return f;
}

}  // namespace

TEST_SUITE("extform") {
  TEST_CASE("generator indexing") {
    CHECK(generator_count(3) == 6);
    CHECK(generator_index(3, 0, 0) == 0);
    CHECK(generator_index(3, 1, 0) == generator_index(3, 0, 1));
    for (int j = 0; j < 6; ++j) {
      const auto [a, b] = generator_pair(3, j);
      CHECK(a <= b);
      CHECK(generator_index(3, a, b) == j);
    }
  }

  TEST_CASE("wedge examples") {
    const int g = 2;
    CHECK(wedge(dt(g, 0, 0), dt(g, 0, 0)).is_zero());
    CHECK(max_coefficient_distance(wedge(dt(g, 0, 0), dt(g, 0, 1)), -wedge(dt(g, 0, 1), dt(g, 0, 0))) == 0.0);

    const ExtForm w1 = wedge(dt(g, 0, 0), dtbar(g, 0, 0));
    const ExtForm w2 = wedge(dt(g, 0, 1), dtbar(g, 0, 1));
    const ExtForm one = ExtForm::one(g);
    const ExtForm lhs = wedge(one + w1, one + w2);
    const ExtForm rhs = one + w1 + w2 + wedge(w1, w2);
    CHECK(max_coefficient_distance(lhs, rhs) == 0.0);
    CHECK(lhs.size() == 4);
  }

  TEST_CASE("wedge is associative and graded commutative") {
    SplitMix64 rng(21);
    for (int t = 0; t < 20; ++t) {
      const ExtForm a = random_form(2, 6, rng);
      const ExtForm b = random_form(2, 6, rng);
      const ExtForm c = random_form(2, 6, rng);
      CHECK(max_coefficient_distance(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-12);
    }
    for (int p = 0; p <= 2; ++p) {
      for (int q = 0; q <= 2; ++q) {
        const ExtForm a = random_homogeneous(3, p, 1, 4, rng);
        const ExtForm b = random_homogeneous(3, q, 1, 4, rng);
        const double sign = ((p + 1) * (q + 1)) % 2 == 0 ? 1.0 : -1.0;
        CHECK(max_coefficient_distance(wedge(a, b), wedge(b, a) * sign) == 0.0);
      }
    }
  }

  TEST_CASE("degree cap truncates") {
    const int g = 2;
    const ExtForm w = wedge(dt(g, 0, 0), dtbar(g, 1, 1));
    CHECK(wedge(w, w).is_zero());
    const ExtForm v = wedge(dt(g, 0, 1), dtbar(g, 0, 1));
    CHECK(wedge(w, v, 2).is_zero());
    CHECK(wedge(w, v, 4).max_degree() == 4);
    CHECK(wedge(ExtForm::one(g) + w, ExtForm::one(g) + v, 2).size() == 3);
  }

  TEST_CASE("inverse_even examples") {
    const int g = 2;
    const ExtForm one = ExtForm::one(g);
    CHECK(max_coefficient_distance(inverse_even(one), one) == 0.0);

    const ExtForm w = wedge(dt(g, 0, 0), dtbar(g, 0, 0));
    CHECK(max_coefficient_distance(inverse_even(one + w), one - w) == 0.0);

    const ExtForm omega = w + wedge(dt(g, 1, 1), dtbar(g, 1, 1));
    const ExtForm expect = one - omega + wedge(omega, omega);
    CHECK(max_coefficient_distance(inverse_even(one + omega), expect) == 0.0);
  }

  TEST_CASE("inverse_even round trip on random even units") {
    SplitMix64 rng(22);
    for (int t = 0; t < 20; ++t) {
      ExtForm a = random_form(2, 12, rng, true);
      a.add_term(0, 0, Complex(1.0, 0.0) - a.scalar_part());
      const ExtForm inv = inverse_even(a);
      CHECK(max_coefficient_distance(wedge(a, inv), ExtForm::one(2)) < 1e-12);
      CHECK(max_coefficient_distance(wedge(inv, a), ExtForm::one(2)) < 1e-12);
    }
  }

  TEST_CASE("inverse_even rejects bad input") {
    const int g = 1;
    try {
      inverse_even(ExtForm::scalar(g, 2.0));
      FAIL("expected NotUnitScalar");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotUnitScalar);
    }
    try {
      inverse_even(ExtForm::one(g) + dt(g, 0, 0));
      FAIL("expected OddComponent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OddComponent);
    }
  }

  TEST_CASE("conjugation") {
    const int g = 2;
    CHECK(max_coefficient_distance(conjugate(dt(g, 0, 0)), dtbar(g, 0, 0)) == 0.0);
    const ExtForm real11 = wedge(dt(g, 0, 0), dtbar(g, 0, 0)) * Complex(0, 1);
    CHECK(max_coefficient_distance(conjugate(real11), real11) == 0.0);
    SplitMix64 rng(23);
    for (int t = 0; t < 20; ++t) {
      const ExtForm a = random_form(3, 10, rng);
      CHECK(max_coefficient_distance(conjugate(conjugate(a)), a) == 0.0);
    }
  }

  TEST_CASE("contract examples") {
    const int g = 2;
    SplitMix64 rng(24);
    const SymMap m = random_sym_map(g, rng);
    const SymMap n = random_sym_map(g, rng);
    const std::vector<SymMap> mm{m};
    const std::vector<SymMap> nn{n};
    const std::vector<SymMap> none;
    CHECK(std::abs(contract(dt(g, 0, 0), mm, none) - m(0, 0)) < 1e-15);
    CHECK(std::abs(contract(wedge(dt(g, 0, 1), dtbar(g, 0, 1)), mm, nn) - m(0, 1) * std::conj(n(0, 1))) < 1e-15);
    const std::vector<SymMap> mn{m, n};
    CHECK(std::abs(contract(wedge(dt(g, 0, 0), dt(g, 1, 1)), mn, none) - (m(0, 0) * n(1, 1) - m(1, 1) * n(0, 0))) <
          1e-14);
    // Components of the wrong bidegree contribute zero.
    CHECK(contract(dt(g, 0, 0), none, mm) == Complex(0, 0));
  }

  TEST_CASE("contract matches Laplace expansion on decomposables") {
    SplitMix64 rng(25);
    for (int t = 0; t < 20; ++t) {
      const int g = 3;
      const ExtForm a1 = random_one_form(g, rng);
      const ExtForm a2 = random_one_form(g, rng);
      const ExtForm a3 = random_one_form(g, rng);
      const std::vector<SymMap> vs{random_sym_map(g, rng), random_sym_map(g, rng), random_sym_map(g, rng)};
      const std::vector<SymMap> none;
      CMatrix pairing(3, 3);
      const ExtForm* as[3] = {&a1, &a2, &a3};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          const std::vector<SymMap> one{vs[static_cast<std::size_t>(c)]};
          pairing(r, c) = contract(*as[r], one, none);
        }
      }
      const Complex got = contract(wedge(wedge(a1, a2), a3), vs, none);
      CHECK(std::abs(got - pairing.determinant()) < 1e-12 * (1.0 + std::abs(got)));
    }
  }

  TEST_CASE("restriction to planes") {
    SplitMix64 rng(26);
    const LinSubspace plane = random_sym_plane(2, 1, rng);
    CHECK(restrict_to_plane(ExtForm(2), plane) == Complex(0, 0));

    const ExtForm std11 = wedge(dt(1, 0, 0), dtbar(1, 0, 0)) * Complex(0, 0.5);
    const LinSubspace line = LinSubspace::whole(1, AmbientTag::SymMaps);
    const Complex lambda = restrict_to_plane(std11, line);
    CHECK(lambda.real() > 0.0);
    CHECK(std::abs(lambda.imag()) < 1e-15);

    // Real (1,1)-forms restrict to real numbers.
    for (int t = 0; t < 20; ++t) {
      const ExtForm x = random_homogeneous(3, 1, 1, 6, rng);
      const ExtForm real = x + conjugate(x);
      CHECK(std::abs(restrict_to_plane(real, random_sym_plane(3, 1, rng)).imag()) < 1e-12);
    }
  }

  TEST_CASE("form matrices") {
    const int g = 2;
    const FormMatrix d = FormMatrix::differential(g, false);
    CHECK(max_coefficient_distance(d(0, 1), d(1, 0)) == 0.0);
    CHECK(max_coefficient_distance(d(0, 1), dt(g, 0, 1)) == 0.0);
    const FormMatrix db = FormMatrix::differential(g, true);
    CHECK(max_coefficient_distance(db(1, 1), dtbar(g, 1, 1)) == 0.0);

    const FormMatrix id = FormMatrix::identity(g, 3);
    CHECK(max_coefficient_distance(determinant(id), ExtForm::one(g)) == 0.0);
    CHECK(max_coefficient_distance(id.trace(), ExtForm::scalar(g, 3.0)) == 0.0);

    // det in row order: m00 m11 - m01 m10.
    FormMatrix m(g, 2, 2);
    m(0, 0) = dt(g, 0, 0);
    m(0, 1) = dt(g, 0, 1);
    m(1, 0) = dtbar(g, 0, 0);
    m(1, 1) = dtbar(g, 1, 1);
    const ExtForm expect = wedge(m(0, 0), m(1, 1)) - wedge(m(0, 1), m(1, 0));
    CHECK(max_coefficient_distance(determinant(m), expect) == 0.0);

    CMatrix s(2, 2);
    s << 1, 2, 3, 4;
    const FormMatrix ds = multiply(d, s);
    CHECK(max_coefficient_distance(ds(0, 0), dt(g, 0, 0) + dt(g, 0, 1) * 3.0) == 0.0);
  }
}
