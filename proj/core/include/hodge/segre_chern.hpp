#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hodge/extform.hpp"
#include "hodge/hodge_curvature.hpp"
#include "hodge/report.hpp"

namespace hodge {

enum class SegreRoute { InverseSeries, MomentFormula, Quadrature };
const char* to_string(SegreRoute route) noexcept;

/// Which bundle's Chern form to build: E* with metric Im(tau)^{-1}, or E with
/// metric Im(tau).
enum class Bundle { DualHodge, Hodge };

struct CharacteristicForms {
  std::vector<ExtForm> chern_estar;  ///< c_0 .. c_g of (E*, h)
  std::vector<ExtForm> chern_e;      ///< c_0 .. c_g of (E, Im tau)
  std::vector<ExtForm> segre_estar;  ///< s_0 .. s_kmax of (E*, h)
  SegreRoute route = SegreRoute::InverseSeries;

  ExtForm chern_estar_total() const;
  ExtForm chern_e_total() const;
  ExtForm segre_total() const;
};

/// det(I - G) for the chosen bundle, G its normalized curvature; the degree 2k
/// part is c_k.
ExtForm chern_total(const CurvaturePackage& pkg, Bundle bundle, int max_degree = kNoDegreeCap);

/// Degree 2k parts of `total` for k = 0..k_max.
std::vector<ExtForm> split_even_degrees(const ExtForm& total, int k_max);

/// Segre forms of E* as the inverse of the total Chern form.
CharacteristicForms segre_by_inverse(const CurvaturePackage& pkg, int k_max);

/// Segre forms of E* from power traces p_m = tr(G^m):
///   s_k = sum over partitions lambda of k of p_lambda / z_lambda.
CharacteristicForms segre_by_moments(const CurvaturePackage& pkg, int k_max);

struct QuadratureEstimate {
  ExtForm value;
  /// Per-coefficient standard error, sqrt(var(Re) + var(Im)) / sqrt(n).
  std::map<ExtForm::Key, double> std_error;
  double max_std_error = 0.0;
  int n_samples = 0;
};

/// Monte Carlo estimate of
///   s_k = binom(g + k - 1, k) * average over unit v of <G v, v>^k,
/// with v uniform on the unit sphere of (E*_p, h). Sample j draws from the
/// stream derive_seed(seed, j); the reduction order is fixed, so the result
/// does not depend on `threads`.
QuadratureEstimate segre_by_quadrature(const CurvaturePackage& pkg, int k, int n_samples,
                                       std::uint64_t seed, int threads = 0);

/// The non-negative representative of c_k(E): s_k(E*, h).
ExtForm c_tilde(const CurvaturePackage& pkg, int k);

/// Per-coefficient z-score max_j |a_j - b_j| / se_j. Differences at or below
/// `abs_floor` count as agreement (roundoff against a roundoff-sized error
/// bar is not a statistical signal); larger ones with zero error bar give inf.
double max_z_score(const ExtForm& estimate, const ExtForm& exact,
                   const std::map<ExtForm::Key, double>& std_error, double abs_floor = 1e-13);

struct QuadratureOptions {
  int n_samples = 0;  ///< 0 disables the Monte Carlo route
  std::uint64_t seed = 0;
  double sigmas = 3.0;
};

/// c(E*) ^ s(E*) = 1 for the inverse, moment and (optionally) quadrature routes.
/// Also reports, without asserting, the form-level product c(E) ^ c(E*).
VerificationReport check_pointwise_identity(const SiegelPoint& tau, double tol,
                                            const QuadratureOptions& quadrature = {});

/// Moment route against inverse route, coefficientwise, for k = 0..2g.
VerificationReport check_route_agreement(const SiegelPoint& tau, double tol,
                                         const QuadratureOptions& quadrature = {});

/// c_k(E, Im tau) against s_k(E*, h). Asserting for k <= 2, report-only above.
VerificationReport check_remark_equality(const SiegelPoint& tau, int k, double tol = 1e-9);

/// Averages the k-th wedge power of the (1,1)-form attached to <,>_L over
/// random lines L and fits the ratio c~_k / average, which should be the
/// positive constant binom(g + k - 1, k) / (4 pi)^k.
VerificationReport check_average_wedge_powers(const SiegelPoint& tau, int k, int n_samples,
                                              std::uint64_t seed, double sigmas = 3.0);

/// c~_i >= 0 on random i-planes, = 0 on i-planes inside W-perp (dim W = g-i+1),
/// > 0 on planes with an injective evaluation map.
VerificationReport check_positivity_and_vanishing(const SiegelPoint& tau, int i, int trials,
                                                  std::uint64_t seed, double tol = 1e-10);

}  // namespace hodge
