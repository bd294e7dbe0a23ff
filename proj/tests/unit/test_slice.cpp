#include <doctest.h>

#include <variant>

#include "hodge/slice.hpp"

using namespace hodge;

namespace {

SiegelPoint identity_point(int g) { return SiegelPoint::make(RMatrix::Zero(g, g), RMatrix::Identity(g, g)); }

CMatrix e_row(int g, int i) {
  CMatrix m = CMatrix::Zero(1, g);
  m(0, i) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("slice") {
  TEST_CASE("zero offset returns the base point") {
    SplitMix64 rng(71);
    const SiegelPoint tau0 = random_siegel_point(3, rng);
    const AffineSlice s = AffineSlice::make(tau0, LinSubspace::span(e_row(3, 0)));
    const SliceMember m = slice_member(s, SymMap(CMatrix(CMatrix::Zero(3, 3))));
    REQUIRE(std::holds_alternative<SiegelPoint>(m));
    CHECK(max_abs(CMatrix(std::get<SiegelPoint>(m).tau() - tau0.tau())) == 0.0);
  }

  TEST_CASE("genus two slice through iI") {
    const AffineSlice s = AffineSlice::make(identity_point(2), LinSubspace::span(e_row(2, 0)));
    CHECK(s.dim() == 1);
    CMatrix e22 = CMatrix::Zero(2, 2);
    e22(1, 1) = 1.0;
    // Im(iI + t e22) = diag(1, 1 + Im t): a member iff Im t > -1.
    for (const Complex t : {Complex(0.3, 0.0), Complex(0.0, -0.5), Complex(2.0, 4.0), Complex(-1.0, -0.99)}) {
      CHECK(std::holds_alternative<SiegelPoint>(slice_member(s, SymMap(CMatrix(t * e22)))));
    }
    for (const Complex t : {Complex(0.0, -1.0), Complex(0.5, -2.0)}) {
      const SliceMember m = slice_member(s, SymMap(CMatrix(t * e22)));
      REQUIRE(std::holds_alternative<OutOfDomain>(m));
      CHECK(std::get<OutOfDomain>(m).min_imag_eigenvalue <= 0.0);
    }

    CMatrix e11 = CMatrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    try {
      slice_member(s, SymMap(e11));
      FAIL("expected NotInWperp");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInWperp);
    }
  }

  TEST_CASE("slice dimension is i(i-1)/2 for dim W = g - i + 1") {
    SplitMix64 rng(72);
    for (int g = 1; g <= 5; ++g) {
      for (int i = 1; i <= g; ++i) {
        const AffineSlice s = AffineSlice::make(random_siegel_point(g, rng),
                                                LinSubspace::span(random_complex_gaussian(g - i + 1, g, rng)));
        CHECK(s.dim() == i * (i - 1) / 2);
      }
    }
  }

  TEST_CASE("member differences lie in W-perp") {
    SplitMix64 rng(73);
    for (int t = 0; t < 30; ++t) {
      const int g = 2 + t % 3;
      const AffineSlice s = AffineSlice::make(random_siegel_point(g, rng),
                                              LinSubspace::span(random_complex_gaussian(1 + t % (g - 1), g, rng)));
      const SliceMember a = sample_member(s, rng);
      const SliceMember b = sample_member(s, rng);
      REQUIRE(std::holds_alternative<SiegelPoint>(a));
      REQUIRE(std::holds_alternative<SiegelPoint>(b));
      const CMatrix diff = std::get<SiegelPoint>(a).tau() - std::get<SiegelPoint>(b).tau();
      CHECK(s.wperp().residual(SymMap(diff).flatten()) < 1e-12);
      CHECK(max_abs(CMatrix(diff * s.w().basis().transpose())) < 1e-12);
    }
  }

  TEST_CASE("embedding examples") {
    const SiegelPoint i1 = identity_point(1);
    CVector one(1);
    one << 1.0;
    CVector imag(1);
    imag << Complex(0, 1);
    const RVector f1 = f_embed(i1, one);
    const RVector fi = f_embed(i1, imag);
    CHECK(f1(0) == 1.0);
    CHECK(f1(1) == 0.0);
    CHECK(fi(0) == 0.0);
    CHECK(fi(1) == 1.0);

    SplitMix64 rng(74);
    for (int t = 0; t < 20; ++t) {
      const int g = 1 + t % 4;
      const SiegelPoint m = random_siegel_point(g, rng);
      const CVector x = random_complex_gaussian(g, 1, rng).col(0);
      const CVector y = random_complex_gaussian(g, 1, rng).col(0);
      CHECK((f_embed(m, CVector(x + y)) - f_embed(m, x) - f_embed(m, y)).norm() < 1e-12);
      CHECK((f_embed(m, CVector(2.5 * x)) - 2.5 * f_embed(m, x)).norm() < 1e-12);
      const RMatrix f = embedding_matrix(m);
      CHECK(std::abs(f.determinant()) > 1e-10);
      RMatrix cols(2 * g, 2 * g);
      for (int j = 0; j < g; ++j) {
        cols.col(j) = f_embed(m, CVector(CVector::Unit(g, j)));
        cols.col(g + j) = f_embed(m, CVector(Complex(0, 1) * CVector::Unit(g, j)));
      }
      CHECK((cols - f).norm() < 1e-14);
    }
  }

  TEST_CASE("complex structure invariants at arbitrary points") {
    SplitMix64 rng(75);
    for (int t = 0; t < 40; ++t) {
      const RealSymplecticFrame frame = RealSymplecticFrame::of(random_siegel_point(1 + t % 4, rng));
      CHECK(frame.square_error() < 1e-10);
      CHECK(frame.symplectic_error() < 1e-10);
      CHECK(frame.tameness() > 0.0);
    }
    const RealSymplecticFrame std_frame = RealSymplecticFrame::of(identity_point(2));
    RMatrix j0 = RMatrix::Zero(4, 4);
    j0.topRightCorner(2, 2) = -RMatrix::Identity(2, 2);
    j0.bottomLeftCorner(2, 2) = RMatrix::Identity(2, 2);
    CHECK((std_frame.j_m - j0).norm() < 1e-14);
  }

  TEST_CASE("image of W and the induced structure are constant on the slice") {
    const AffineSlice full = AffineSlice::make(identity_point(2), LinSubspace::whole(2));
    const VerificationReport rf = check_slice_embedding(full, 5, 1);
    CHECK(rf.passed());
    CHECK(image_subspace(identity_point(2), LinSubspace::whole(2)).dim() == 4);

    const AffineSlice s = AffineSlice::make(identity_point(2), LinSubspace::span(e_row(2, 0)));
    const VerificationReport r = check_slice_embedding(s, 20, 2);
    CHECK(r.passed());
    for (const CheckRecord& c : r.checks) {
      if (c.name == "image-distance") CHECK(c.measured < 1e-10);
      if (c.name == "j-tameness-sampled") CHECK(c.measured > 0.0);
    }
  }

  TEST_CASE("random slice suite") {
    const VerificationReport r = slice_suite(40, 4, 9);
    CHECK(r.passed());
  }
}
