#include "hodge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hodge {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GenusMismatch: return "GenusMismatch";
    case ErrorCode::NotUnitScalar: return "NotUnitScalar";
    case ErrorCode::OddComponent: return "OddComponent";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BadSampleCount: return "BadSampleCount";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InputNotRankOne: return "InputNotRankOne";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::NotInWperp: return "NotInWperp";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::SuiteUnknown: return "SuiteUnknown";
  }
  return "Unknown";
}

namespace {

template <typename Derived>
Derived symmetrized(const Derived& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be square");
  }
  const double asym = m.rows() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym >= kSymmetryTolerance) {
    throw Error(ErrorCode::NotSymmetric,
                std::string(what) + " asymmetry " + std::to_string(asym) + " exceeds 1e-12");
  }
  Derived s = (m + m.transpose()) / 2.0;
  return s;
}

}  // namespace

SiegelPoint SiegelPoint::make(const RMatrix& x_re, const RMatrix& y_im) {
  if (x_re.rows() != y_im.rows() || x_re.cols() != y_im.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "real and imaginary parts differ in size");
  }
  if (x_re.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "genus must be positive");
  }
  const RMatrix x = symmetrized(x_re, "real part");
  const RMatrix y = symmetrized(y_im, "imaginary part");

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(y, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (!(min_eig > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "smallest eigenvalue of Im(tau) is " + std::to_string(min_eig));
  }
  CMatrix tau(x.rows(), x.cols());
  tau.real() = x;
  tau.imag() = y;
  RMatrix y_inv = y.llt().solve(RMatrix::Identity(y.rows(), y.cols()));
  y_inv = (y_inv + y_inv.transpose()) / 2.0;
  return SiegelPoint(std::move(tau), std::move(y_inv), min_eig);
}

SiegelPoint SiegelPoint::from_complex(const CMatrix& tau) {
  return make(tau.real(), tau.imag());
}

SymMap::SymMap(const CMatrix& m) : m_(symmetrized(m, "symmetric map")) {}

CVector SymMap::flatten() const {
  const int g = genus();
  CVector out(g * g);
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) out(a * g + b) = m_(a, b);
  }
  return out;
}

SymMap SymMap::unflatten(const CVector& coords, int genus) {
  if (coords.size() != genus * genus) {
    throw Error(ErrorCode::DimensionMismatch, "flattened symmetric map has wrong length");
  }
  CMatrix m(genus, genus);
  for (int a = 0; a < genus; ++a) {
    for (int b = 0; b < genus; ++b) m(a, b) = coords(a * genus + b);
  }
  // Orthonormalization leaves roundoff-level asymmetry; absorb it here.
  return SymMap(CMatrix((m + m.transpose()) / 2.0));
}

LinSubspace LinSubspace::span(const CMatrix& spanning, AmbientTag tag, double tol) {
  const int n = static_cast<int>(spanning.cols());
  if (spanning.rows() == 0) return zero(n, tag);
  Eigen::BDCSVD<CMatrix> svd(spanning, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int r = 0;
  while (r < sv.size() && smax > 0.0 && sv(r) > tol * smax) ++r;
  // Rows of the span are the conjugate-transposed right singular vectors.
  CMatrix basis = svd.matrixV().leftCols(r).adjoint();
  return LinSubspace(std::move(basis), n, tag);
}

LinSubspace LinSubspace::zero(int ambient_dim, AmbientTag tag) {
  return LinSubspace(CMatrix(0, ambient_dim), ambient_dim, tag);
}

LinSubspace LinSubspace::whole(int ambient_dim, AmbientTag tag) {
  return LinSubspace(CMatrix::Identity(ambient_dim, ambient_dim), ambient_dim, tag);
}

LinSubspace LinSubspace::span_of(const std::vector<SymMap>& maps, double tol) {
  if (maps.empty()) throw Error(ErrorCode::BadDimension, "span_of needs at least one map");
  const int g = maps.front().genus();
  CMatrix rows(static_cast<Eigen::Index>(maps.size()), g * g);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].genus() != g) throw Error(ErrorCode::DimensionMismatch, "mixed genera");
    rows.row(static_cast<Eigen::Index>(i)) = maps[i].flatten().transpose();
  }
  return span(rows, AmbientTag::SymMaps, tol);
}

SymMap LinSubspace::sym_map(int i) const {
  const int g = static_cast<int>(std::lround(std::sqrt(static_cast<double>(ambient_))));
  return SymMap::unflatten(vector(i), g);
}

std::vector<SymMap> LinSubspace::sym_maps() const {
  std::vector<SymMap> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) out.push_back(sym_map(i));
  return out;
}

CMatrix LinSubspace::projector() const {
  // Rows b_i are orthonormal: P = sum_i b_i^T conj(b_i).
  return basis_.transpose() * basis_.conjugate();
}

double LinSubspace::residual(const CVector& x) const {
  const CVector coeffs = basis_.conjugate() * x;
  return (x - basis_.transpose() * coeffs).norm();
}

RankDecomposition rank_with_kernel(const CMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParameters, "rank tolerance must be positive");
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  RankDecomposition out;
  if (rows == 0 || cols == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    out.rank = 0;
    out.kernel = LinSubspace::whole(cols);
    out.image = LinSubspace::zero(rows);
    return out;
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = tol * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  out.rank = r;
  // Kernel vectors are columns of V; store them transposed (not conjugated)
  // so each row is a kernel vector.
  out.kernel = LinSubspace::span(svd.matrixV().rightCols(cols - r).transpose());
  out.image = LinSubspace::span(svd.matrixU().leftCols(r).transpose());
  if (out.kernel.dim() != cols - r) out.kernel = LinSubspace::zero(cols);
  return out;
}

double subspace_distance(const LinSubspace& a, const LinSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
  }
  if (a.dim() == 0 && b.dim() == 0) return 0.0;
  const CMatrix diff = a.projector() - b.projector();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(diff, Eigen::EigenvaluesOnly);
  return std::min(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CMatrix random_complex_gaussian(int rows, int cols, SplitMix64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

SymMap random_sym_map(int genus, SplitMix64& rng) {
  const CMatrix a = random_complex_gaussian(genus, genus, rng);
  return SymMap(CMatrix((a + a.transpose()) / 2.0));
}

SiegelPoint random_siegel_point(int genus, SplitMix64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix x(genus, genus);
  RMatrix a(genus, genus);
  for (int j = 0; j < genus; ++j) {
    for (int i = 0; i < genus; ++i) {
      x(i, j) = normal(rng);
      a(i, j) = normal(rng);
    }
  }
  const RMatrix xs = (x + x.transpose()) / 2.0;
  RMatrix y = a * a.transpose() / static_cast<double>(genus) + 0.5 * RMatrix::Identity(genus, genus);
  y = (y + y.transpose()) / 2.0;
  return SiegelPoint::make(xs, y);
}

LinSubspace random_sym_plane(int genus, int k, SplitMix64& rng) {
  std::vector<SymMap> maps;
  maps.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) maps.push_back(random_sym_map(genus, rng));
  return LinSubspace::span_of(maps);
}

}  // namespace hodge
