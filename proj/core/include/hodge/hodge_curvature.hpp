#pragma once

#include "hodge/extform.hpp"
#include "hodge/linalg.hpp"

namespace hodge {

/// Metric and curvature of the Hodge bundle E and its dual E* at one point.
///
/// Conventions: the metric on E* is h = Im(tau)^{-1}, the metric on E is
/// Im(tau). Curvatures are dbar(h^{-1} d h) of the respective metric and the
/// normalized curvature is G = Omega / (2 pi i).
struct CurvaturePackage {
  SiegelPoint tau;
  RMatrix h;              ///< metric on E*
  FormMatrix omega;       ///< curvature of (E*, h)
  FormMatrix g_normalized;
  FormMatrix omega_e;     ///< curvature of (E, Im tau)
  FormMatrix g_e;

  int genus() const noexcept { return tau.genus(); }
};

/// Omega = -1/4 (d tau) Y^{-1} (conj d tau) Y^{-1} for E* and
/// Omega_E = -1/4 Y^{-1} (conj d tau) Y^{-1} (d tau) for E, with Y = Im tau.
CurvaturePackage curvature_package(const SiegelPoint& tau);

/// The scalar (1,1)-form <G v, v> = conj(v)^T h G v on the fiber of E*.
/// Real (conjugation invariant) and sesquilinear in v.
ExtForm gv_form(const CurvaturePackage& pkg, const CVector& v);

/// <v, v> in the metric h of E*.
double fiber_norm_squared(const CurvaturePackage& pkg, const CVector& v);

/// Hermitian matrix, in the generator basis of symmetric matrices, of
///   (a, b) -> <a w, b w>_{E*} / <w, w>_E
/// with <x, y>_{E*} = x^T h conj(y) and <w, w>_E = w^T Im(tau) conj(w).
/// Entry (j, k) pairs generator j (linear slot) with generator k.
CMatrix herm_form_L(const SiegelPoint& tau, const CVector& w);

/// (1,1)-form (i/2) sum_jk H_jk d tau_j ^ conj(d tau_k) attached to a
/// Hermitian matrix H on the tangent space; non-negative when H is.
ExtForm associated_form(const CMatrix& herm, int genus);

/// Curvature of (E*, h) from nested central differences of h = Im(tau)^{-1}
/// in long double: coefficient of d tau_p ^ conj(d tau_q) is
/// -dbar_q (h^{-1} d_p h), with Wirtinger derivatives in the symmetric
/// coordinates tau_p.
FormMatrix curvature_finite_difference(const SiegelPoint& tau, double step = 1e-5);

/// max |analytic - finite difference| / max |analytic| over all entries.
double curvature_fd_relative_error(const SiegelPoint& tau, double step = 1e-5);

}  // namespace hodge
