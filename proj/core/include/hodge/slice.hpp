#pragma once

#include <cstdint>
#include <variant>

#include "hodge/linalg.hpp"
#include "hodge/report.hpp"

namespace hodge {

/// Members of the Siegel space that agree with tau0 on a subspace W of C^g.
/// The set is an open piece of the affine space tau0 + W-perp.
class AffineSlice {
 public:
  /// `w` must live in C^g with g the genus of tau0.
  static AffineSlice make(SiegelPoint tau0, LinSubspace w);

  const SiegelPoint& tau0() const noexcept { return tau0_; }
  const LinSubspace& w() const noexcept { return w_; }
  const LinSubspace& wperp() const noexcept { return wperp_; }
  int genus() const noexcept { return tau0_.genus(); }
  /// Complex dimension of the slice.
  int dim() const noexcept { return wperp_.dim(); }

 private:
  AffineSlice(SiegelPoint tau0, LinSubspace w, LinSubspace wperp)
      : tau0_(std::move(tau0)), w_(std::move(w)), wperp_(std::move(wperp)) {}

  SiegelPoint tau0_;
  LinSubspace w_;
  LinSubspace wperp_;
};

/// tau0 + n left the Siegel space; carries the offending eigenvalue.
struct OutOfDomain {
  double min_imag_eigenvalue = 0.0;
};

using SliceMember = std::variant<SiegelPoint, OutOfDomain>;

inline constexpr double kWperpResidual = 1e-10;

/// tau0 + n. Raises NotInWperp when n does not kill W.
SliceMember slice_member(const AffineSlice& slice, const SymMap& n);

/// Random member at Frobenius distance `step` from tau0, halving the step
/// until it lands in the Siegel space. Gives up below 1e-6.
SliceMember sample_member(const AffineSlice& slice, SplitMix64& rng, double step = 0.5);

/// f_M(x) = (Re x, -Re(M x)).
RVector f_embed(const SiegelPoint& m, const CVector& x);
/// Columns f_M(e_1..e_g), f_M(i e_1..i e_g).
RMatrix embedding_matrix(const SiegelPoint& m);
/// f_M(W) as a real subspace of R^2g.
LinSubspace image_subspace(const SiegelPoint& m, const LinSubspace& w);

/// Standard form ((0, I), (-I, 0)).
RMatrix symplectic_form(int genus);
/// J_M = f_M o i o f_M^{-1}.
RMatrix complex_structure(const SiegelPoint& m);

struct RealSymplecticFrame {
  RMatrix omega;
  RMatrix j_m;

  static RealSymplecticFrame of(const SiegelPoint& m);
  /// max |J^2 + I|
  double square_error() const;
  /// max |J^T omega J - omega|
  double symplectic_error() const;
  /// Smallest eigenvalue of the symmetric part of omega J; (u, J u) > 0 for
  /// all u iff positive.
  double tameness() const;
};

/// Samples members of the slice and checks that they agree with tau0 on W,
/// that f_M(W) does not depend on the member, and the J_M invariants.
VerificationReport check_slice_embedding(const AffineSlice& slice, int n_members, std::uint64_t seed);

/// Random (genus <= max_genus, W, tau0, members) cases, aggregated.
VerificationReport slice_suite(int cases, int max_genus, std::uint64_t seed, int members_per_case = 4);

}  // namespace hodge
