#include "hodge/hodge_curvature.hpp"

#include <algorithm>
#include <numbers>

namespace hodge {

namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

void require_nonzero(const CVector& v, int genus) {
  if (v.size() != genus) throw Error(ErrorCode::DimensionMismatch, "vector length differs from genus");
  if (v.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroVector, "vector must be nonzero");
}

}  // namespace

CurvaturePackage curvature_package(const SiegelPoint& tau) {
  const int g = tau.genus();
  const CMatrix y_inv = tau.imag_inverse().cast<Complex>();
  const FormMatrix d_tau = FormMatrix::differential(g, false);
  const FormMatrix d_tau_bar = FormMatrix::differential(g, true);

  // E*: the 1-form matrices anticommute entrywise, so the order is fixed.
  const FormMatrix left = multiply(d_tau, y_inv);
  const FormMatrix right = multiply(d_tau_bar, y_inv);
  FormMatrix omega = multiply(left, right).scaled(-0.25);

  // E: same recipe with metric Im(tau).
  const FormMatrix left_e = multiply(y_inv, d_tau_bar);
  const FormMatrix right_e = multiply(y_inv, d_tau);
  FormMatrix omega_e = multiply(left_e, right_e).scaled(-0.25);

  CurvaturePackage pkg{tau,
                       tau.imag_inverse(),
                       omega,
                       omega.scaled(1.0 / kTwoPiI),
                       omega_e,
                       omega_e.scaled(1.0 / kTwoPiI)};
  return pkg;
}

ExtForm gv_form(const CurvaturePackage& pkg, const CVector& v) {
  const int g = pkg.genus();
  require_nonzero(v, g);
  const CVector hv_bar = pkg.h * v.conjugate();  // h symmetric: conj(v)^T h
  ExtForm out(g);
  for (int a = 0; a < g; ++a) {
    for (int d = 0; d < g; ++d) {
      const Complex w = hv_bar(a) * v(d);
      if (w != Complex{}) out += pkg.g_normalized(a, d) * w;
    }
  }
  return out;
}

double fiber_norm_squared(const CurvaturePackage& pkg, const CVector& v) {
  return (v.adjoint() * pkg.h.cast<Complex>() * v)(0, 0).real();
}

CMatrix herm_form_L(const SiegelPoint& tau, const CVector& w) {
  const int g = tau.genus();
  require_nonzero(w, g);
  const int n = generator_count(g);
  const RMatrix& h = tau.imag_inverse();
  const RMatrix y = tau.imag_part();
  const double ww = (w.transpose() * y.cast<Complex>() * w.conjugate())(0, 0).real();

  // Column j: E_j w, the evaluation of generator direction j at w.
  CMatrix evals(g, n);
  for (int j = 0; j < n; ++j) {
    const auto [a, b] = generator_pair(g, j);
    CVector e = CVector::Zero(g);
    e(a) += w(b);
    if (a != b) e(b) += w(a);
    evals.col(j) = e;
  }
  const CMatrix herm = evals.transpose() * h.cast<Complex>() * evals.conjugate();
  return herm / ww;
}

ExtForm associated_form(const CMatrix& herm, int genus) {
  const int n = generator_count(genus);
  if (herm.rows() != n || herm.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Hermitian form has wrong size");
  }
  ExtForm out(genus);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out.add_term(ExtForm::Mask{1} << j, ExtForm::Mask{1} << k, Complex(0.0, 0.5) * herm(j, k));
    }
  }
  return out;
}

}  // namespace hodge

namespace hodge {

namespace {

using LComplex = std::complex<long double>;
using LCMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

LCMatrix metric_at(const LCMatrix& tau) {
  const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> y = tau.imag();
  return y.inverse().cast<LComplex>();
}

// tau shifted by delta along the symmetric coordinate p.
LCMatrix shifted(const LCMatrix& tau, int p, LComplex delta) {
  const auto [a, b] = generator_pair(static_cast<int>(tau.rows()), p);
  LCMatrix out = tau;
  out(a, b) += delta;
  if (a != b) out(b, a) += delta;
  return out;
}

// Wirtinger derivative d/d tau_p (holomorphic) or d/d conj(tau_p).
template <typename F>
LCMatrix wirtinger(const F& f, const LCMatrix& tau, int p, long double s, bool anti) {
  const LCMatrix dx = (f(shifted(tau, p, s)) - f(shifted(tau, p, -s))) / (2 * s);
  const LCMatrix dy = (f(shifted(tau, p, LComplex(0, s))) - f(shifted(tau, p, LComplex(0, -s)))) / (2 * s);
  const LComplex i(0, 1);
  return anti ? LCMatrix((dx + i * dy) / 2.0L) : LCMatrix((dx - i * dy) / 2.0L);
}

}  // namespace

FormMatrix curvature_finite_difference(const SiegelPoint& tau, double step) {
  const int g = tau.genus();
  const int n = generator_count(g);
  const long double s = step;
  const LCMatrix t0 = tau.tau().cast<LComplex>();
  FormMatrix out(g, g, g);
  for (int p = 0; p < n; ++p) {
    auto connection = [&](const LCMatrix& t) -> LCMatrix {
      return metric_at(t).inverse() * wirtinger(metric_at, t, p, s, false);
    };
    for (int q = 0; q < n; ++q) {
      const LCMatrix d = -wirtinger(connection, t0, q, s, true);
      for (int r = 0; r < g; ++r) {
        for (int c = 0; c < g; ++c) {
          const Complex v(static_cast<double>(d(r, c).real()), static_cast<double>(d(r, c).imag()));
          out(r, c) += ExtForm::term(g, ExtForm::Mask{1} << p, ExtForm::Mask{1} << q, v);
        }
      }
    }
  }
  return out;
}

double curvature_fd_relative_error(const SiegelPoint& tau, double step) {
  const FormMatrix analytic = curvature_package(tau).omega;
  const FormMatrix fd = curvature_finite_difference(tau, step);
  double diff = 0.0;
  double scale = 0.0;
  for (int r = 0; r < tau.genus(); ++r) {
    for (int c = 0; c < tau.genus(); ++c) {
      diff = std::max(diff, max_coefficient_distance(analytic(r, c), fd(r, c)));
      scale = std::max(scale, analytic(r, c).max_abs());
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace hodge
