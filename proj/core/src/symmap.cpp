#include "hodge/symmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hodge {

namespace {

std::vector<std::vector<int>> combinations(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(idx);
    int pos = r - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - r + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

RationalMatrix random_int_matrix(int rows, int cols, SplitMix64& rng, std::int64_t bound) {
  RationalMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = Rational(static_cast<long>(random_int(rng, bound)));
  }
  return m;
}

// Full-row-rank random integer matrix.
RationalMatrix random_full_rank(int rows, int cols, SplitMix64& rng, std::int64_t bound) {
  while (true) {
    RationalMatrix m = random_int_matrix(rows, cols, rng, bound);
    if (rank(m) == std::min(rows, cols)) return m;
  }
}

std::vector<RationalSymMap> random_space(int g, int dim, SplitMix64& rng) {
  while (true) {
    std::vector<RationalSymMap> maps;
    for (int j = 0; j < dim; ++j) maps.push_back(RationalSymMap::random(g, rng, 20));
    if (span_dimension(maps) == dim) return maps;
  }
}

std::string format_rational(const Rational& q) { return q.get_str(); }

// Rank-k exact symmetric map A D A^T.
RationalSymMap random_rank_k(int g, int k, SplitMix64& rng) {
  while (true) {
    const RationalMatrix a = random_int_matrix(g, k, rng, 5);
    RationalMatrix d(k, k);
    for (int j = 0; j < k; ++j) {
      std::int64_t x = 0;
      while (x == 0) x = random_int(rng, 5);
      d(j, j) = Rational(static_cast<long>(x));
    }
    RationalSymMap m(a * d * a.transpose());
    if (rank(m.matrix()) == k) return m;
  }
}

double scale_of(const CMatrix& m) {
  const double s = max_abs(m);
  return s > 0.0 ? s : 1.0;
}

}  // namespace

RationalSymMap::RationalSymMap(RationalMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorCode::DimensionMismatch, "symmetric map must be square");
  for (int a = 0; a < m_.rows(); ++a) {
    for (int b = a + 1; b < m_.cols(); ++b) {
      if (m_(a, b) != m_(b, a)) throw Error(ErrorCode::NotSymmetric, "rational map is not symmetric");
    }
  }
}

RationalSymMap RationalSymMap::outer_sym(const std::vector<Rational>& u, const std::vector<Rational>& w) {
  const int g = static_cast<int>(u.size());
  RationalMatrix m(g, g);
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      m(a, b) = u[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)] +
                w[static_cast<std::size_t>(a)] * u[static_cast<std::size_t>(b)];
    }
  }
  return RationalSymMap(std::move(m));
}

RationalSymMap RationalSymMap::random(int genus, SplitMix64& rng, std::int64_t bound) {
  RationalMatrix m(genus, genus);
  for (int a = 0; a < genus; ++a) {
    for (int b = a; b < genus; ++b) {
      m(a, b) = Rational(static_cast<long>(random_int(rng, bound)));
      m(b, a) = m(a, b);
    }
  }
  return RationalSymMap(std::move(m));
}

std::vector<Rational> RationalSymMap::flatten() const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(genus() * genus()));
  for (int a = 0; a < genus(); ++a) {
    for (int b = 0; b < genus(); ++b) out.push_back(m_(a, b));
  }
  return out;
}

EvalOperator eval_operator(const std::vector<SymMap>& x_basis, const CVector& v) {
  EvalOperator op;
  op.x_basis = x_basis;
  op.v = v;
  const int g = static_cast<int>(v.size());
  op.matrix = CMatrix(static_cast<Eigen::Index>(x_basis.size()), g);
  for (std::size_t j = 0; j < x_basis.size(); ++j) {
    if (x_basis[j].genus() != g) throw Error(ErrorCode::DimensionMismatch, "map and vector sizes differ");
    op.matrix.row(static_cast<Eigen::Index>(j)) = (x_basis[j].matrix() * v).transpose();
  }
  return op;
}

RationalMatrix eval_matrix(const std::vector<RationalSymMap>& x_basis, const std::vector<Rational>& v) {
  const int g = static_cast<int>(v.size());
  RationalMatrix out(static_cast<int>(x_basis.size()), g);
  for (std::size_t j = 0; j < x_basis.size(); ++j) {
    const std::vector<Rational> xv = x_basis[j].matrix().apply(v);
    for (int c = 0; c < g; ++c) out(static_cast<int>(j), c) = xv[static_cast<std::size_t>(c)];
  }
  return out;
}

LinSubspace wperp(const LinSubspace& w) {
  const int g = w.ambient_dim();
  // Annihilator of W under the bilinear pairing u^T w.
  const LinSubspace ann = w.dim() == 0 ? LinSubspace::whole(g) : rank_with_kernel(w.basis()).kernel;
  const int c = ann.dim();
  if (c == 0) return LinSubspace::zero(g * g, AmbientTag::SymMaps);
  std::vector<SymMap> maps;
  for (int i = 0; i < c; ++i) {
    for (int j = i; j < c; ++j) {
      const CVector ui = ann.vector(i);
      const CVector uj = ann.vector(j);
      maps.emplace_back(CMatrix(ui * uj.transpose() + uj * ui.transpose()));
    }
  }
  return LinSubspace::span_of(maps);
}

std::vector<RationalSymMap> wperp_exact(const RationalMatrix& w_rows) {
  const auto ann = nullspace(w_rows);
  std::vector<RationalSymMap> maps;
  for (std::size_t i = 0; i < ann.size(); ++i) {
    for (std::size_t j = i; j < ann.size(); ++j) maps.push_back(RationalSymMap::outer_sym(ann[i], ann[j]));
  }
  return maps;
}

int span_dimension(const std::vector<RationalSymMap>& maps) {
  if (maps.empty()) return 0;
  const int n = maps.front().genus() * maps.front().genus();
  RationalMatrix rows(static_cast<int>(maps.size()), n);
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const auto flat = maps[j].flatten();
    for (int c = 0; c < n; ++c) rows(static_cast<int>(j), c) = flat[static_cast<std::size_t>(c)];
  }
  return rank(rows);
}

HypothesisResult hypothesis_check(const LinSubspace& x, int i, int n_v_samples, std::uint64_t seed,
                                  double tol) {
  if (x.dim() < i) throw Error(ErrorCode::BadDimension, "dim X is smaller than i");
  const std::vector<SymMap> basis = x.sym_maps();
  const int g = basis.empty() ? 0 : basis.front().genus();
  HypothesisResult res;
  res.note = "complex Gaussian v: a nonzero minor vanishes at a sample with probability 0";
  res.failure_bound = 0.0;
  for (int s = 0; s < n_v_samples; ++s) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const CVector v = random_complex_gaussian(g, 1, rng).col(0);
    const EvalOperator op = eval_operator(basis, v);
    const int r = rank_with_kernel(op.matrix, tol).rank;
    res.samples_used = s + 1;
    res.max_rank = std::max(res.max_rank, r);
    if (r >= i) {
      Eigen::ColPivHouseholderQR<CMatrix> qr(op.matrix.transpose());
      HypothesisWitness wit;
      wit.v = v;
      wit.rank = r;
      std::vector<SymMap> chosen;
      for (int j = 0; j < i; ++j) {
        const int row = static_cast<int>(qr.colsPermutation().indices()(j));
        wit.rows.push_back(row);
        chosen.push_back(basis[static_cast<std::size_t>(row)]);
      }
      wit.y = LinSubspace::span_of(chosen);
      res.holds = false;
      res.witness = std::move(wit);
      return res;
    }
  }
  return res;
}

HypothesisResult hypothesis_check_exact(const std::vector<RationalSymMap>& x, int i, int n_v_samples,
                                        std::uint64_t seed) {
  if (span_dimension(x) < i) throw Error(ErrorCode::BadDimension, "dim X is smaller than i");
  const int g = x.front().genus();
  constexpr std::int64_t kBound = 1000;
  HypothesisResult res;
  const double per_sample = static_cast<double>(i) / static_cast<double>(2 * kBound + 1);
  for (int s = 0; s < n_v_samples; ++s) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const std::vector<Rational> v = random_rational_vector(g, rng, kBound);
    const RationalMatrix e = eval_matrix(x, v);
    const int r = rank(e);
    res.samples_used = s + 1;
    res.max_rank = std::max(res.max_rank, r);
    if (r >= i) {
      HypothesisWitness wit;
      wit.rank = r;
      wit.v = CVector(g);
      for (int c = 0; c < g; ++c) {
        wit.v(c) = v[static_cast<std::size_t>(c)].get_d();
        wit.v_exact.push_back(format_rational(v[static_cast<std::size_t>(c)]));
      }
      const std::vector<int> rows = independent_rows(e);
      std::vector<SymMap> chosen;
      for (int j = 0; j < i; ++j) {
        wit.rows.push_back(rows[static_cast<std::size_t>(j)]);
        chosen.push_back(x[static_cast<std::size_t>(rows[static_cast<std::size_t>(j)])].shadow());
      }
      wit.y = LinSubspace::span_of(chosen);
      res.holds = false;
      res.witness = std::move(wit);
      res.failure_bound = 0.0;
      res.note = "witness found; hypothesis refuted exactly";
      return res;
    }
  }
  res.failure_bound = std::pow(per_sample, res.samples_used);
  res.note = "integer v in [-1000, 1000]; each sample misses a nonzero degree-" + std::to_string(i) +
             " minor with probability <= " + std::to_string(i) + "/2001";
  return res;
}

TangentDecision rank_locus_tangent_check(const RationalSymMap& m, int k, const RationalSymMap& n) {
  const int g = m.genus();
  if (n.genus() != g) throw Error(ErrorCode::DimensionMismatch, "M and N differ in size");
  if (rank(m.matrix()) != k) throw Error(ErrorCode::RankMismatch, "rank of M differs from k");
  TangentDecision out;

  // (a) N(ker M) inside im M.
  out.predicate = true;
  for (const auto& u : nullspace(m.matrix())) {
    const RationalMatrix nu = RationalMatrix::column(n.matrix().apply(u));
    if (rank(m.matrix().hstack(nu)) != k) {
      out.predicate = false;
      break;
    }
  }

  // (b) d/dt det((M + tN)[R, C]) at t = 0 for every (k+1)-minor.
  out.minor_test = true;
  double worst = 0.0;
  const auto subsets = combinations(g, k + 1);
  for (const auto& rows : subsets) {
    for (const auto& cols : subsets) {
      const RationalMatrix ms = m.matrix().submatrix(rows, cols);
      const RationalMatrix ns = n.matrix().submatrix(rows, cols);
      Rational deriv = 0;
      for (int j = 0; j <= k; ++j) {
        RationalMatrix replaced = ms;
        for (int r = 0; r <= k; ++r) replaced(r, j) = ns(r, j);
        deriv += determinant(std::move(replaced));
      }
      if (deriv != 0) out.minor_test = false;
      worst = std::max(worst, std::abs(deriv.get_d()));
    }
  }
  out.derivative_norm = worst;
  out.agree = out.predicate == out.minor_test;
  out.in_tangent = out.predicate && out.minor_test;
  return out;
}

TangentDecision rank_locus_tangent_check(const SymMap& m, int k, const SymMap& n, double tol) {
  const int g = m.genus();
  if (n.genus() != g) throw Error(ErrorCode::DimensionMismatch, "M and N differ in size");
  const RankDecomposition dec = rank_with_kernel(m.matrix(), tol);
  if (dec.rank != k) throw Error(ErrorCode::RankMismatch, "numerical rank of M differs from k");
  TangentDecision out;
  const double scale_m = scale_of(m.matrix());
  const double scale_n = scale_of(n.matrix());
  // Decisions use a looser threshold than the rank cut to absorb roundoff.
  const double decide = std::sqrt(tol);

  out.predicate = true;
  for (int j = 0; j < dec.kernel.dim(); ++j) {
    const CVector nu = n.matrix() * dec.kernel.vector(j);
    if (dec.image.residual(nu) > decide * scale_n) out.predicate = false;
  }

  double worst = 0.0;
  const auto subsets = combinations(g, k + 1);
  for (const auto& rows : subsets) {
    for (const auto& cols : subsets) {
      CMatrix ms(k + 1, k + 1);
      CMatrix ns(k + 1, k + 1);
      for (int r = 0; r <= k; ++r) {
        for (int c = 0; c <= k; ++c) {
          ms(r, c) = m.matrix()(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
          ns(r, c) = n.matrix()(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
        }
      }
      Complex deriv{};
      for (int j = 0; j <= k; ++j) {
        CMatrix replaced = ms;
        replaced.col(j) = ns.col(j);
        deriv += replaced.determinant();
      }
      worst = std::max(worst, std::abs(deriv));
    }
  }
  out.derivative_norm = worst;
  out.minor_test = worst <= decide * std::pow(scale_m, k) * scale_n;
  out.agree = out.predicate == out.minor_test;
  out.in_tangent = out.predicate && out.minor_test;
  return out;
}

PencilProfile pencil_rank_profile(const SymMap& m, const SymMap& n, int n_grid, double tol) {
  if (rank_with_kernel(m.matrix(), tol).rank != 1 || rank_with_kernel(n.matrix(), tol).rank != 1) {
    throw Error(ErrorCode::InputNotRankOne, "pencil generators must have rank one");
  }
  CMatrix pair(2, m.genus() * m.genus());
  pair.row(0) = m.flatten().transpose();
  pair.row(1) = n.flatten().transpose();
  if (rank_with_kernel(pair, tol).rank != 2) throw Error(ErrorCode::NotIndependent, "maps are dependent");

  PencilProfile out;
  SplitMix64 rng(derive_seed(static_cast<std::uint64_t>(n_grid), 17));
  for (int s = 0; s < n_grid; ++s) {
    // Real grid on the circle, then random complex pairs.
    Complex a;
    Complex b;
    if (s % 2 == 0) {
      const double theta = std::numbers::pi * s / std::max(1, n_grid);
      a = std::cos(theta);
      b = std::sin(theta);
    } else {
      const CMatrix ab = random_complex_gaussian(2, 1, rng);
      a = ab(0, 0);
      b = ab(1, 0);
    }
    const int r = rank_with_kernel(CMatrix(a * m.matrix() + b * n.matrix()), tol).rank;
    out.max_rank = std::max(out.max_rank, r);
    out.rank_two_attained = out.rank_two_attained || r == 2;
    ++out.samples;
  }
  return out;
}

RankOneSearch find_rank_ones(const LinSubspace& x, const CVector& v, double tol) {
  if (x.dim() < 1) throw Error(ErrorCode::BadDimension, "X must be nonzero");
  const std::vector<SymMap> basis = x.sym_maps();
  const EvalOperator op = eval_operator(basis, v);
  // c in the intersection iff sum_j c_j x_j v = 0.
  const LinSubspace coeffs = rank_with_kernel(op.matrix.transpose(), tol).kernel;
  RankOneSearch out;
  out.intersection_dim = coeffs.dim();
  std::vector<CMatrix> inter;
  for (int j = 0; j < coeffs.dim(); ++j) {
    CMatrix acc = CMatrix::Zero(v.size(), v.size());
    const CVector c = coeffs.vector(j);
    for (std::size_t b = 0; b < basis.size(); ++b) acc += c(static_cast<Eigen::Index>(b)) * basis[b].matrix();
    inter.push_back(acc);
  }
  const double verify = std::sqrt(tol);
  auto is_rank_le_one = [&](const CMatrix& m) { return rank_with_kernel(m, verify).rank <= 1; };
  auto push = [&](const CMatrix& m) { out.maps.emplace_back(CMatrix(m / m.norm())); };

  if (inter.empty()) return out;
  if (inter.size() == 1) {
    if (is_rank_le_one(inter[0])) push(inter[0]);
    return out;
  }
  if (inter.size() > 2) {
    out.searched = false;
    return out;
  }

  // det((A + tB)[2x2]) = c0 + c1 t + c2 t^2 for every 2x2 minor.
  const CMatrix& a = inter[0];
  const CMatrix& b = inter[1];
  const int g = static_cast<int>(v.size());
  const auto pairs = combinations(g, 2);
  Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
  for (const auto& r : pairs) {
    for (const auto& c : pairs) {
      const Complex a11 = a(r[0], c[0]), a12 = a(r[0], c[1]), a21 = a(r[1], c[0]), a22 = a(r[1], c[1]);
      const Complex b11 = b(r[0], c[0]), b12 = b(r[0], c[1]), b21 = b(r[1], c[0]), b22 = b(r[1], c[1]);
      const Eigen::Vector3cd poly(a11 * a22 - a12 * a21, a11 * b22 + b11 * a22 - a12 * b21 - b12 * a21,
                                  b11 * b22 - b12 * b21);
      if (poly.cwiseAbs().maxCoeff() > best.cwiseAbs().maxCoeff()) best = poly;
    }
  }
  if (best.cwiseAbs().maxCoeff() <= tol) {
    // Every minor vanishes identically along the pencil.
    push(a);
    push(b);
    return out;
  }
  std::vector<Complex> roots;
  const double lead_scale = best.cwiseAbs().maxCoeff();
  if (std::abs(best(2)) > tol * lead_scale) {
    const Complex disc = std::sqrt(best(1) * best(1) - 4.0 * best(2) * best(0));
    roots.push_back((-best(1) + disc) / (2.0 * best(2)));
    roots.push_back((-best(1) - disc) / (2.0 * best(2)));
  } else if (std::abs(best(1)) > tol * lead_scale) {
    roots.push_back(-best(0) / best(1));
  }
  for (const Complex t : roots) {
    const CMatrix cand = a + t * b;
    if (is_rank_le_one(cand)) {
      const bool duplicate = std::any_of(out.maps.begin(), out.maps.end(), [&](const SymMap& s) {
        const CMatrix u = cand / cand.norm();
        const Complex phase = (s.matrix().conjugate().cwiseProduct(u)).sum();
        return (u - phase * s.matrix()).norm() < verify;
      });
      if (!duplicate) push(cand);
    }
  }
  if (is_rank_le_one(b)) push(b);  // t = infinity
  return out;
}

VerificationReport wperp_witness_suite(int g, int i, int trials, std::uint64_t seed, int v_samples) {
  if (!(3 <= i && i <= g && g <= 5) || trials < 1) {
    throw Error(ErrorCode::BadParameters, "need 3 <= i <= g <= 5 and trials >= 1");
  }
  VerificationReport rep;
  rep.suite = "symmap-thm25";
  rep.params = {{"genus", g}, {"i", i}, {"trials", trials}, {"seed", seed}, {"v_samples", v_samples}};
  const int target_dim = i * (i - 1) / 2;
  const std::string anchor = "spaces where no evaluation map is injective on i-planes are exactly W-perp";
  SplitMix64 rng(derive_seed(seed, 0));

  // (a) W-perp for random W of dimension g - i + 1.
  int dim_errors = 0;
  int witnesses_on_wperp = 0;
  double worst_bound = 0.0;
  std::vector<std::vector<RationalSymMap>> wperps;
  const int n_w = std::max(1, std::min(5, trials));
  for (int t = 0; t < n_w; ++t) {
    const RationalMatrix w = random_full_rank(g - i + 1, g, rng, 10);
    std::vector<RationalSymMap> x = wperp_exact(w);
    if (span_dimension(x) != target_dim || static_cast<int>(x.size()) != target_dim) ++dim_errors;
    const HypothesisResult res = hypothesis_check_exact(x, i, v_samples, derive_seed(seed, 1000 + t));
    if (!res.holds) ++witnesses_on_wperp;
    worst_bound = std::max(worst_bound, res.failure_bound);
    wperps.push_back(std::move(x));
  }
  rep.add("wperp-dimension-errors", anchor, dim_errors, 0, Relation::Equal,
          "dim W-perp must equal i(i-1)/2 = " + std::to_string(target_dim));
  rep.add("wperp-witnesses", anchor, witnesses_on_wperp, 0, Relation::Equal,
          std::to_string(n_w) + " spaces x " + std::to_string(v_samples) + " exact v-samples");

  // (b) perturb one basis element of W-perp by eps * R, eps alternating 1 and 1/1000.
  int perturbed_witnesses = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<RationalSymMap> x = wperps[static_cast<std::size_t>(t % n_w)];
    const Rational eps = (t % 2 == 0) ? Rational(1) : Rational(1, 1000);
    RationalSymMap r = RationalSymMap::random(g, rng, 20);
    x[0] = RationalSymMap(x[0].matrix() + r.matrix().scaled(eps));
    if (span_dimension(x) != target_dim) {
      --t;  // degenerate draw; resample
      continue;
    }
    if (!hypothesis_check_exact(x, i, v_samples, derive_seed(seed, 2000 + t)).holds) ++perturbed_witnesses;
  }
  rep.add("perturbed-witnesses", anchor, perturbed_witnesses, trials, Relation::Equal,
          "eps in {1, 1e-3}");

  // (c) generic spaces of dimension i(i-1)/2 and i(i-1)/2 + 1.
  int generic_witnesses = 0;
  int larger_witnesses = 0;
  const int larger_dim = target_dim + 1;
  const bool larger_fits = larger_dim <= g * (g + 1) / 2;
  for (int t = 0; t < trials; ++t) {
    if (!hypothesis_check_exact(random_space(g, target_dim, rng), i, v_samples, derive_seed(seed, 3000 + t)).holds) {
      ++generic_witnesses;
    }
    if (larger_fits &&
        !hypothesis_check_exact(random_space(g, larger_dim, rng), i, v_samples, derive_seed(seed, 4000 + t)).holds) {
      ++larger_witnesses;
    }
  }
  rep.add("generic-witnesses", anchor, generic_witnesses, trials, Relation::Equal);
  if (larger_fits) {
    rep.add("larger-space-witnesses", "no space larger than i(i-1)/2 meets the hypothesis",
            larger_witnesses, trials, Relation::Equal);
  }
  rep.note("wperp-failure-bound", anchor, worst_bound,
           "probability bound that a violation on W-perp was missed");
  return rep;
}

VerificationReport small_index_suite(int g, int i, int trials, std::uint64_t seed, int v_samples) {
  if (!(i == 1 || i == 2) || i > g || trials < 1) {
    throw Error(ErrorCode::BadParameters, "need i in {1, 2}, i <= g, trials >= 1");
  }
  VerificationReport rep;
  rep.suite = "symmap-small-index";
  rep.params = {{"genus", g}, {"i", i}, {"trials", trials}, {"seed", seed}};
  SplitMix64 rng(derive_seed(seed, 0));
  const int min_dim = std::max(i, i * (i - 1) / 2);
  const int full = g * (g + 1) / 2;

  std::vector<std::vector<RationalSymMap>> spaces;
  for (int t = 0; t < trials; ++t) {
    const int dim = std::min(full, min_dim + t % 2);
    spaces.push_back(random_space(g, dim, rng));
  }
  // Structured spaces: rank-one maps and their pencils, W-perp with codim W = 2.
  for (int t = 0; t < trials; ++t) {
    const auto u = random_rational_vector(g, rng, 10);
    const auto w = random_rational_vector(g, rng, 10);
    std::vector<RationalSymMap> x{RationalSymMap::outer_sym(u, u)};
    if (i == 2) x.push_back(RationalSymMap::outer_sym(w, w));
    if (span_dimension(x) == static_cast<int>(x.size())) spaces.push_back(std::move(x));
  }
  if (g >= 2) {
    const RationalMatrix w = random_full_rank(g - 2, g, rng, 10);
    spaces.push_back(g == 2 ? wperp_exact(RationalMatrix(0, 2)) : wperp_exact(w));
  }

  int witnesses = 0;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    if (!hypothesis_check_exact(spaces[s], i, v_samples, derive_seed(seed, 100 + s)).holds) ++witnesses;
  }
  rep.add("witnesses", "for i < 3 the hypothesis is never met", witnesses,
          static_cast<double>(spaces.size()), Relation::Equal);
  return rep;
}

VerificationReport rank_locus_suite(int g, int k, int pairs, std::uint64_t seed) {
  if (!(1 <= k && k < g)) throw Error(ErrorCode::BadParameters, "need 1 <= k < g");
  VerificationReport rep;
  rep.suite = "rank-locus";
  rep.params = {{"genus", g}, {"k", k}, {"pairs", pairs}, {"seed", seed}};
  const std::string anchor = "tangent space of the rank-k locus is {N : N(ker M) in im M}";
  SplitMix64 rng(derive_seed(seed, 0));
  int disagreements = 0;
  int tangent = 0;
  int constructed_missed = 0;
  for (int t = 0; t < pairs; ++t) {
    const RationalSymMap m = random_rank_k(g, k, rng);
    RationalSymMap n;
    const bool construct_tangent = t % 2 == 0;
    if (construct_tangent) {
      // N = M B + B^T M is tangent to the orbit of M.
      const RationalMatrix b = random_int_matrix(g, g, rng, 5);
      n = RationalSymMap(m.matrix() * b + b.transpose() * m.matrix());
    } else {
      n = RationalSymMap::random(g, rng, 20);
    }
    const TangentDecision d = rank_locus_tangent_check(m, k, n);
    if (!d.agree) ++disagreements;
    if (d.in_tangent) ++tangent;
    if (construct_tangent && !d.in_tangent) ++constructed_missed;
  }
  rep.add("disagreements", anchor, disagreements, 0, Relation::Equal);
  rep.add("constructed-tangent-rejected", anchor, constructed_missed, 0, Relation::Equal);
  rep.note("tangent-count", anchor, tangent, std::to_string(pairs) + " pairs");
  return rep;
}

}  // namespace hodge
