#include "hodge/slice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hodge/symmap.hpp"

namespace hodge {

namespace {

RMatrix block_j0(int g) {
  RMatrix j = RMatrix::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = -RMatrix::Identity(g, g);
  j.bottomLeftCorner(g, g) = RMatrix::Identity(g, g);
  return j;
}

double real_max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

AffineSlice AffineSlice::make(SiegelPoint tau0, LinSubspace w) {
  if (w.ambient_dim() != tau0.genus()) throw Error(ErrorCode::DimensionMismatch, "W must lie in C^g");
  LinSubspace perp = hodge::wperp(w);
  return AffineSlice(std::move(tau0), std::move(w), std::move(perp));
}

SliceMember slice_member(const AffineSlice& slice, const SymMap& n) {
  const int g = slice.genus();
  if (n.genus() != g) throw Error(ErrorCode::DimensionMismatch, "n has the wrong size");
  if (slice.w().dim() > 0) {
    const CMatrix nw = n.matrix() * slice.w().basis().transpose();
    if (max_abs(nw) > kWperpResidual) throw Error(ErrorCode::NotInWperp, "n does not annihilate W");
  }
  const CMatrix m = slice.tau0().tau() + n.matrix();
  const RMatrix y = m.imag();
  const double min_eig = Eigen::SelfAdjointEigenSolver<RMatrix>(0.5 * (y + y.transpose()),
                                                               Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .minCoeff();
  if (!(min_eig > 0.0)) return OutOfDomain{min_eig};
  return SiegelPoint::from_complex(m);
}

SliceMember sample_member(const AffineSlice& slice, SplitMix64& rng, double step) {
  const int g = slice.genus();
  if (slice.dim() == 0) return slice.tau0();
  const CMatrix coeffs = random_complex_gaussian(slice.dim(), 1, rng);
  CVector flat = slice.wperp().basis().transpose() * coeffs.col(0);
  flat /= flat.norm();
  CMatrix n = SymMap::unflatten(flat, g).matrix();
  // Clean the roundoff component along W so the member agrees with tau0 there.
  if (slice.w().dim() > 0) {
    const CMatrix proj = slice.wperp().projector();
    n = SymMap::unflatten(proj * SymMap(n).flatten(), g).matrix();
  }
  SliceMember last = OutOfDomain{};
  for (double s = step; s >= 1e-6; s *= 0.5) {
    last = slice_member(slice, SymMap(CMatrix(s * n)));
    if (std::holds_alternative<SiegelPoint>(last)) return last;
  }
  return last;
}

RVector f_embed(const SiegelPoint& m, const CVector& x) {
  const int g = m.genus();
  if (x.size() != g) throw Error(ErrorCode::DimensionMismatch, "x has the wrong size");
  RVector out(2 * g);
  out.head(g) = x.real();
  out.tail(g) = -(m.tau() * x).real();
  return out;
}

RMatrix embedding_matrix(const SiegelPoint& m) {
  const int g = m.genus();
  RMatrix f = RMatrix::Zero(2 * g, 2 * g);
  f.topLeftCorner(g, g) = RMatrix::Identity(g, g);
  f.bottomLeftCorner(g, g) = -m.real_part();
  f.bottomRightCorner(g, g) = m.imag_part();
  return f;
}

LinSubspace image_subspace(const SiegelPoint& m, const LinSubspace& w) {
  const int g = m.genus();
  CMatrix rows(2 * w.dim(), 2 * g);
  for (int j = 0; j < w.dim(); ++j) {
    const CVector v = w.vector(j);
    rows.row(2 * j) = f_embed(m, v).cast<Complex>().transpose();
    rows.row(2 * j + 1) = f_embed(m, CVector(Complex(0, 1) * v)).cast<Complex>().transpose();
  }
  if (w.dim() == 0) return LinSubspace::zero(2 * g, AmbientTag::Real);
  // Real vectors: the SVD basis may carry a phase; rebuild from real parts.
  const LinSubspace complex_span = LinSubspace::span(rows, AmbientTag::Real);
  CMatrix real_rows(2 * complex_span.dim(), 2 * g);
  real_rows << complex_span.basis().real().cast<Complex>(), complex_span.basis().imag().cast<Complex>();
  return LinSubspace::span(real_rows, AmbientTag::Real);
}

RMatrix symplectic_form(int genus) { return -block_j0(genus); }

RMatrix complex_structure(const SiegelPoint& m) {
  const RMatrix f = embedding_matrix(m);
  return f * block_j0(m.genus()) * f.inverse();
}

RealSymplecticFrame RealSymplecticFrame::of(const SiegelPoint& m) {
  return {symplectic_form(m.genus()), complex_structure(m)};
}

double RealSymplecticFrame::square_error() const {
  return real_max_abs(j_m * j_m + RMatrix::Identity(j_m.rows(), j_m.cols()));
}

double RealSymplecticFrame::symplectic_error() const {
  return real_max_abs(j_m.transpose() * omega * j_m - omega);
}

double RealSymplecticFrame::tameness() const {
  const RMatrix q = omega * j_m;
  return Eigen::SelfAdjointEigenSolver<RMatrix>(0.5 * (q + q.transpose()), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

namespace {

struct SliceStats {
  double member_residual = 0.0;  // |M w - tau0 w| over members
  double difference_residual = 0.0;
  double image_distance = 0.0;
  double restricted_form_min_sv = std::numeric_limits<double>::infinity();
  double j_square = 0.0;
  double j_symplectic = 0.0;
  double tameness_min = std::numeric_limits<double>::infinity();
  double tameness_sampled_min = std::numeric_limits<double>::infinity();
  double j_restriction_diff = 0.0;
  int members = 0;
  int out_of_domain = 0;

  void absorb(const SliceStats& o) {
    member_residual = std::max(member_residual, o.member_residual);
    difference_residual = std::max(difference_residual, o.difference_residual);
    image_distance = std::max(image_distance, o.image_distance);
    restricted_form_min_sv = std::min(restricted_form_min_sv, o.restricted_form_min_sv);
    j_square = std::max(j_square, o.j_square);
    j_symplectic = std::max(j_symplectic, o.j_symplectic);
    tameness_min = std::min(tameness_min, o.tameness_min);
    tameness_sampled_min = std::min(tameness_sampled_min, o.tameness_sampled_min);
    j_restriction_diff = std::max(j_restriction_diff, o.j_restriction_diff);
    members += o.members;
    out_of_domain += o.out_of_domain;
  }
};

void frame_stats(const SiegelPoint& m, SplitMix64& rng, SliceStats& st) {
  const RealSymplecticFrame frame = RealSymplecticFrame::of(m);
  st.j_square = std::max(st.j_square, frame.square_error());
  st.j_symplectic = std::max(st.j_symplectic, frame.symplectic_error());
  st.tameness_min = std::min(st.tameness_min, frame.tameness());
  const RMatrix u = random_complex_gaussian(static_cast<int>(frame.omega.rows()), 8, rng).real();
  for (int c = 0; c < u.cols(); ++c) {
    const double val = u.col(c).dot(frame.omega * frame.j_m * u.col(c)) / u.col(c).squaredNorm();
    st.tameness_sampled_min = std::min(st.tameness_sampled_min, val);
  }
}

SliceStats slice_stats(const AffineSlice& slice, int n_members, std::uint64_t seed) {
  SliceStats st;
  const SiegelPoint& tau0 = slice.tau0();
  const int g = slice.genus();
  const LinSubspace v0 = image_subspace(tau0, slice.w());
  const RMatrix j0 = complex_structure(tau0);
  const RMatrix v0_basis = v0.basis().real().transpose();  // 2g x 2d, orthonormal columns

  if (v0.dim() > 0) {
    const RMatrix restricted = v0_basis.transpose() * symplectic_form(g) * v0_basis;
    st.restricted_form_min_sv =
        Eigen::JacobiSVD<RMatrix>(restricted).singularValues().minCoeff();
  }

  SplitMix64 frame_rng(derive_seed(seed, 1));
  frame_stats(tau0, frame_rng, st);
  // Frames at generic points, not only slice members.
  frame_stats(random_siegel_point(g, frame_rng), frame_rng, st);

  std::vector<SiegelPoint> members{tau0};
  for (int k = 0; k < n_members; ++k) {
    SplitMix64 rng(derive_seed(seed, 100 + static_cast<std::uint64_t>(k)));
    const SliceMember res = sample_member(slice, rng);
    if (!std::holds_alternative<SiegelPoint>(res)) {
      ++st.out_of_domain;
      continue;
    }
    members.push_back(std::get<SiegelPoint>(res));
  }
  st.members = static_cast<int>(members.size()) - 1;

  for (std::size_t a = 1; a < members.size(); ++a) {
    const SiegelPoint& m = members[a];
    if (slice.w().dim() > 0) {
      const CMatrix wb = slice.w().basis().transpose();
      st.member_residual = std::max(st.member_residual, max_abs(CMatrix((m.tau() - tau0.tau()) * wb)));
    }
    const CVector diff = SymMap(CMatrix(m.tau() - members[a - 1].tau())).flatten();
    st.difference_residual = std::max(st.difference_residual, slice.wperp().residual(diff));
    st.image_distance = std::max(st.image_distance, subspace_distance(image_subspace(m, slice.w()), v0));
    frame_stats(m, frame_rng, st);
    if (v0.dim() > 0) {
      const RMatrix jm = complex_structure(m);
      st.j_restriction_diff =
          std::max(st.j_restriction_diff, real_max_abs(RMatrix(jm * v0_basis - j0 * v0_basis)));
    }
  }
  return st;
}

void fill_report(VerificationReport& rep, const SliceStats& st) {
  const std::string slice_anchor = "slice members agree with tau0 on W; tangent space is W-perp";
  const std::string image_anchor = "f_M(W) = f_tau(W) for members M of the slice";
  const std::string frame_anchor = "J_M is a compatible complex structure for the standard symplectic form";
  rep.add("member-agrees-on-w", slice_anchor, st.member_residual, 1e-12, Relation::Below);
  rep.add("difference-in-wperp", slice_anchor, st.difference_residual, 1e-12, Relation::Below);
  rep.add("out-of-domain-members", slice_anchor, st.out_of_domain, 0, Relation::Equal,
          "sampler step floor 1e-6");
  rep.add("image-distance", image_anchor, st.image_distance, 1e-10, Relation::Below);
  if (std::isfinite(st.restricted_form_min_sv)) {
    rep.add("restricted-form-min-singular-value", "f_tau(W) is a non-degenerate subspace",
            st.restricted_form_min_sv, 1e-10, Relation::Above);
  }
  rep.add("j-squared", frame_anchor, st.j_square, 1e-10, Relation::Below);
  rep.add("j-symplectic", frame_anchor, st.j_symplectic, 1e-10, Relation::Below);
  rep.add("j-tameness", frame_anchor, st.tameness_min, 0.0, Relation::Above,
          "smallest eigenvalue of sym(omega J)");
  rep.add("j-tameness-sampled", frame_anchor, st.tameness_sampled_min, 0.0, Relation::Above,
          "(u, J u)/|u|^2 over random u");
  rep.add("j-restriction-constant", image_anchor, st.j_restriction_diff, 1e-10, Relation::Below);
}

}  // namespace

VerificationReport check_slice_embedding(const AffineSlice& slice, int n_members, std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "slice-61";
  rep.params = {{"genus", slice.genus()}, {"dim_w", slice.w().dim()}, {"members", n_members}, {"seed", seed}};
  const SliceStats st = slice_stats(slice, n_members, seed);
  fill_report(rep, st);
  return rep;
}

VerificationReport slice_suite(int cases, int max_genus, std::uint64_t seed, int members_per_case) {
  if (cases < 1 || max_genus < 1) throw Error(ErrorCode::BadParameters, "need cases >= 1 and max_genus >= 1");
  VerificationReport rep;
  rep.suite = "slice-61";
  rep.params = {{"cases", cases}, {"max_genus", max_genus}, {"seed", seed}, {"members", members_per_case}};
  SliceStats total;
  for (int c = 0; c < cases; ++c) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const int g = 1 + c % max_genus;
    const int dim_w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g));
    const SiegelPoint tau0 = random_siegel_point(g, rng);
    const LinSubspace w = LinSubspace::span(random_complex_gaussian(dim_w, g, rng));
    const AffineSlice slice = AffineSlice::make(tau0, w);
    total.absorb(slice_stats(slice, members_per_case, derive_seed(seed, 1'000'000 + static_cast<std::uint64_t>(c))));
  }
  fill_report(rep, total);
  rep.note("members-sampled", "slice members agree with tau0 on W; tangent space is W-perp", total.members);
  return rep;
}

}  // namespace hodge
