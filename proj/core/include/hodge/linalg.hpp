#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "hodge/error.hpp"
#include "hodge/random.hpp"

namespace hodge {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kDefaultRankTolerance = 1e-10;

/// A point of the Siegel upper half space: a symmetric complex g x g matrix
/// whose imaginary part is positive definite.
class SiegelPoint {
 public:
  /// Builds tau = x_re + i y_im. Inputs whose asymmetry is below 1e-12 are
  /// symmetrized; larger asymmetry raises NotSymmetric.
  static SiegelPoint make(const RMatrix& x_re, const RMatrix& y_im);
  /// Same validation for an already assembled complex matrix.
  static SiegelPoint from_complex(const CMatrix& tau);

  int genus() const noexcept { return static_cast<int>(tau_.rows()); }
  const CMatrix& tau() const noexcept { return tau_; }
  RMatrix real_part() const { return tau_.real(); }
  RMatrix imag_part() const { return tau_.imag(); }
  /// Inverse of Im(tau); the Hodge metric on the dual bundle.
  const RMatrix& imag_inverse() const noexcept { return imag_inv_; }
  double min_imag_eigenvalue() const noexcept { return min_eig_; }

 private:
  SiegelPoint(CMatrix tau, RMatrix imag_inv, double min_eig)
      : tau_(std::move(tau)), imag_inv_(std::move(imag_inv)), min_eig_(min_eig) {}

  CMatrix tau_;
  RMatrix imag_inv_;
  double min_eig_;
};

/// Symmetric complex g x g matrix: a tangent vector of the Siegel space, or
/// equivalently a symmetric map V -> V*.
class SymMap {
 public:
  SymMap() = default;
  /// Symmetrizes within 1e-12, otherwise raises NotSymmetric.
  explicit SymMap(const CMatrix& m);

  int genus() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int a, int b) const { return m_(a, b); }

  /// Flattened row-major coordinates; Frobenius inner product becomes the
  /// standard Hermitian one.
  CVector flatten() const;
  static SymMap unflatten(const CVector& coords, int genus);

 private:
  CMatrix m_;
};

enum class AmbientTag { Vector, SymMaps, Real };

/// A complex subspace stored as a d x n matrix whose rows are orthonormal.
class LinSubspace {
 public:
  LinSubspace() = default;
  /// Orthonormalizes the rows of `spanning`; dependent rows (relative
  /// singular value below `tol`) are dropped.
  static LinSubspace span(const CMatrix& spanning, AmbientTag tag = AmbientTag::Vector,
                          double tol = kDefaultRankTolerance);
  static LinSubspace zero(int ambient_dim, AmbientTag tag = AmbientTag::Vector);
  static LinSubspace whole(int ambient_dim, AmbientTag tag = AmbientTag::Vector);
  /// Span of symmetric matrices, flattened row-major.
  static LinSubspace span_of(const std::vector<SymMap>& maps, double tol = kDefaultRankTolerance);

  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  int ambient_dim() const noexcept { return ambient_; }
  AmbientTag tag() const noexcept { return tag_; }
  const CMatrix& basis() const noexcept { return basis_; }
  CVector vector(int i) const { return basis_.row(i).transpose(); }
  /// Basis element i reshaped as a g x g symmetric matrix (SymMaps tag only).
  SymMap sym_map(int i) const;
  std::vector<SymMap> sym_maps() const;

  /// Orthogonal projector onto the subspace (n x n).
  CMatrix projector() const;
  /// Norm of the component of x orthogonal to the subspace.
  double residual(const CVector& x) const;

 private:
  LinSubspace(CMatrix basis, int ambient, AmbientTag tag)
      : basis_(std::move(basis)), ambient_(ambient), tag_(tag) {}

  CMatrix basis_;
  int ambient_ = 0;
  AmbientTag tag_ = AmbientTag::Vector;
};

struct RankDecomposition {
  int rank = 0;
  LinSubspace kernel;
  LinSubspace image;
};

/// Numerical rank relative to the largest singular value, with orthonormal
/// kernel (in the column space) and image.
RankDecomposition rank_with_kernel(const CMatrix& m, double tol = kDefaultRankTolerance);

/// Gap between subspaces: || P_a - P_b ||_2. Equals the largest principal
/// angle sine for equal dimensions and 1 when the dimensions differ.
double subspace_distance(const LinSubspace& a, const LinSubspace& b);

double max_abs(const CMatrix& m);

// Random generators shared by the verification suites.
CMatrix random_complex_gaussian(int rows, int cols, SplitMix64& rng);
SymMap random_sym_map(int genus, SplitMix64& rng);
/// Random Siegel point with Im(tau) = A A^T + 0.5 I and Gaussian real part.
SiegelPoint random_siegel_point(int genus, SplitMix64& rng);
/// Random complex k-plane in the space of symmetric g x g matrices.
LinSubspace random_sym_plane(int genus, int k, SplitMix64& rng);

}  // namespace hodge
