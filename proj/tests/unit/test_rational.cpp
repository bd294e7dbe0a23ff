#include <doctest.h>

#include "hodge/rational.hpp"

using namespace hodge;

namespace {

RationalMatrix from_ints(int rows, int cols, std::initializer_list<long> values) {
  RationalMatrix m(rows, cols);
  int i = 0;
  for (long v : values) {
    m(i / cols, i % cols) = Rational(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("rank and determinant") {
    const RationalMatrix a = from_ints(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(rank(a) == 2);
    CHECK(determinant(a) == 0);
    const RationalMatrix b = from_ints(3, 3, {2, 0, 1, 1, 3, 0, 0, 1, 4});
    CHECK(rank(b) == 3);
    CHECK(determinant(b) == 25);
    CHECK(determinant(RationalMatrix::identity(4)) == 1);
    CHECK(rank(RationalMatrix(2, 3)) == 0);
  }

  TEST_CASE("nullspace vectors are killed exactly") {
    const RationalMatrix a = from_ints(2, 4, {1, 2, 0, -1, 0, 1, 3, 5});
    const auto ns = nullspace(a);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) {
      for (const auto& x : a.apply(v)) CHECK(x == 0);
    }
  }

  TEST_CASE("independent rows") {
    const RationalMatrix a = from_ints(4, 3, {1, 0, 0, 2, 0, 0, 0, 1, 0, 1, 1, 0});
    CHECK(independent_rows(a) == std::vector<int>{0, 2});
  }

  TEST_CASE("products and structure") {
    const RationalMatrix a = from_ints(2, 3, {1, 2, 3, 4, 5, 6});
    const RationalMatrix p = a * a.transpose();
    CHECK(p == from_ints(2, 2, {14, 32, 32, 77}));
    CHECK(a.hstack(a).cols() == 6);
    CHECK(a.submatrix({1}, {0, 2}) == from_ints(1, 2, {4, 6}));
    CHECK((a - a).is_zero());
    CHECK(a.scaled(Rational(1, 2))(1, 1) == Rational(5, 2));
  }

  TEST_CASE("random integers stay in range") {
    SplitMix64 rng(1);
    bool hit_low = false;
    bool hit_high = false;
    for (int t = 0; t < 5000; ++t) {
      const auto x = random_int(rng, 3);
      CHECK(x >= -3);
      CHECK(x <= 3);
      hit_low = hit_low || x == -3;
      hit_high = hit_high || x == 3;
    }
    CHECK(hit_low);
    CHECK(hit_high);
  }
}
