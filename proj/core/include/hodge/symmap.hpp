#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodge/linalg.hpp"
#include "hodge/rational.hpp"
#include "hodge/report.hpp"

namespace hodge {

// V* is identified with coordinate vectors through the standard basis, so a
// symmetric map is a symmetric matrix and e_v(x) = x v.

/// Exactly symmetric g x g matrix of rationals.
class RationalSymMap {
 public:
  RationalSymMap() = default;
  /// Raises NotSymmetric unless m equals its transpose exactly.
  explicit RationalSymMap(RationalMatrix m);
  static RationalSymMap outer_sym(const std::vector<Rational>& u, const std::vector<Rational>& w);
  static RationalSymMap random(int genus, SplitMix64& rng, std::int64_t bound = 1000);

  int genus() const noexcept { return m_.rows(); }
  const RationalMatrix& matrix() const noexcept { return m_; }
  SymMap shadow() const { return SymMap(m_.to_complex()); }
  std::vector<Rational> flatten() const;

 private:
  RationalMatrix m_;
};

/// e_v restricted to the span of `x_basis`: row j is x_j v.
struct EvalOperator {
  std::vector<SymMap> x_basis;
  CVector v;
  CMatrix matrix;
};

EvalOperator eval_operator(const std::vector<SymMap>& x_basis, const CVector& v);
RationalMatrix eval_matrix(const std::vector<RationalSymMap>& x_basis, const std::vector<Rational>& v);

/// Symmetric maps whose kernel contains W, for W a subspace of C^g.
/// Dimension c(c+1)/2 with c = codim W.
LinSubspace wperp(const LinSubspace& w);
/// Exact variant: W spanned by the rows of `w_rows` (k x g). Returns a basis.
std::vector<RationalSymMap> wperp_exact(const RationalMatrix& w_rows);

/// Number of independent maps among `maps` (exact).
int span_dimension(const std::vector<RationalSymMap>& maps);

struct HypothesisWitness {
  CVector v;                      ///< sample with rank(e_v | X) >= i
  std::vector<std::string> v_exact;  ///< exact coordinates when found on the exact path
  std::vector<int> rows;          ///< basis indices spanning an i-plane Y
  LinSubspace y;                  ///< Y, on which e_v is injective
  int rank = 0;
};

struct HypothesisResult {
  bool holds = true;
  std::optional<HypothesisWitness> witness;
  int samples_used = 0;
  int max_rank = 0;
  /// Upper bound on the probability that every sample missed a violation.
  double failure_bound = 1.0;
  std::string note;
};

/// Tests "e_v fails to be injective on every i-plane of X, for every v",
/// which is equivalent to rank(e_v | X) <= i - 1 for all v. The minors of
/// e_v | X are polynomials of degree <= i in v, so a violation survives
/// random sampling with high probability.
HypothesisResult hypothesis_check(const LinSubspace& x, int i, int n_v_samples, std::uint64_t seed,
                                  double tol = kDefaultRankTolerance);
/// Exact path: X spanned by rational maps, v drawn with integer coordinates
/// in [-1000, 1000], ranks computed over the rationals.
HypothesisResult hypothesis_check_exact(const std::vector<RationalSymMap>& x, int i, int n_v_samples,
                                        std::uint64_t seed);

struct TangentDecision {
  bool predicate = false;     ///< N(ker M) subset of im M
  bool minor_test = false;    ///< every (k+1)-minor has zero derivative along N
  bool agree = false;
  bool in_tangent = false;
  double derivative_norm = 0.0;  ///< largest |d/dt minor(M + tN)| at t = 0
};

/// Membership of N in the tangent space of the rank-<= k locus at M, decided
/// by the kernel/image predicate and by first-order minor expansion.
TangentDecision rank_locus_tangent_check(const RationalSymMap& m, int k, const RationalSymMap& n);
TangentDecision rank_locus_tangent_check(const SymMap& m, int k, const SymMap& n,
                                         double tol = kDefaultRankTolerance);

struct PencilProfile {
  int max_rank = 0;
  bool rank_two_attained = false;
  int samples = 0;
};

/// Ranks along the pencil a M + b N of two independent rank-one maps.
PencilProfile pencil_rank_profile(const SymMap& m, const SymMap& n, int n_grid,
                                  double tol = kDefaultRankTolerance);

struct RankOneSearch {
  std::vector<SymMap> maps;
  int intersection_dim = 0;
  bool searched = true;  ///< false when the intersection has dimension >= 3
};

/// Rank <= 1 elements of X intersected with the maps vanishing on v. Searches
/// intersections of dimension <= 2 by solving the 2x2 minors along a pencil.
RankOneSearch find_rank_ones(const LinSubspace& x, const CVector& v,
                             double tol = kDefaultRankTolerance);

/// Randomized check of the classification of subspaces on which every
/// evaluation map fails to be injective on i-planes. Requires 3 <= i <= g <= 5.
VerificationReport wperp_witness_suite(int g, int i, int trials, std::uint64_t seed, int v_samples = 100);

/// i in {1, 2}: every sampled subspace of dimension >= max(i, i(i-1)/2) has a witness.
VerificationReport small_index_suite(int g, int i, int trials, std::uint64_t seed, int v_samples = 100);

/// Predicate and minor test agree on random exact (M, N) with rank M = k.
VerificationReport rank_locus_suite(int g, int k, int pairs, std::uint64_t seed);

}  // namespace hodge
