#include "hodge/extform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace hodge {

namespace {

using Mask = ExtForm::Mask;

int popcount(Mask m) noexcept { return std::popcount(m); }

// Number of pairs (x in a, y in b) with x > y: the transpositions needed to
// merge the ordered product a * b into ascending order.
int merge_inversions(Mask a, Mask b) noexcept {
  int count = 0;
  while (b != 0) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    count += popcount(y >= 31 ? Mask{0} : a >> (y + 1));
  }
  return count;
}

void check_same_genus(const ExtForm& a, const ExtForm& b) {
  if (a.genus() != b.genus()) {
    throw Error(ErrorCode::GenusMismatch, "forms of genus " + std::to_string(a.genus()) +
                                              " and " + std::to_string(b.genus()));
  }
}

// Holomorphic pairing matrix: row j holds t_j evaluated on every generator.
CMatrix pairing_rows(std::span<const SymMap> vectors, int genus) {
  const int n = generator_count(genus);
  CMatrix p(static_cast<Eigen::Index>(vectors.size()), n);
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].genus() != genus) {
      throw Error(ErrorCode::GenusMismatch, "tangent vector of wrong size");
    }
    for (int idx = 0; idx < n; ++idx) {
      const auto [a, b] = generator_pair(genus, idx);
      p(static_cast<Eigen::Index>(j), idx) = vectors[j](a, b);
    }
  }
  return p;
}

Complex minor_on_mask(const CMatrix& p, Mask cols) {
  const int k = static_cast<int>(p.rows());
  if (k == 0) return 1.0;
  CMatrix sub(k, k);
  int c = 0;
  for (Mask m = cols; m != 0; m &= m - 1) {
    sub.col(c++) = p.col(std::countr_zero(m));
  }
  return sub.determinant();
}

}  // namespace

int generator_index(int genus, int a, int b) {
  if (a > b) std::swap(a, b);
  if (a < 0 || b >= genus) throw Error(ErrorCode::DimensionMismatch, "generator index out of range");
  // Rows 0..a-1 of the upper triangle hold genus + (genus-1) + ... entries.
  return a * genus - a * (a - 1) / 2 + (b - a);
}

std::pair<int, int> generator_pair(int genus, int index) {
  int a = 0;
  int row_len = genus;
  while (index >= row_len) {
    index -= row_len;
    --row_len;
    ++a;
    if (row_len <= 0) throw Error(ErrorCode::DimensionMismatch, "generator index out of range");
  }
  return {a, a + index};
}

ExtForm::ExtForm(int genus) : genus_(genus) {
  if (genus <= 0 || 2 * hodge::generator_count(genus) > 64) {
    throw Error(ErrorCode::BadParameters, "unsupported genus " + std::to_string(genus));
  }
  if (hodge::generator_count(genus) > 32) {
    throw Error(ErrorCode::BadParameters, "genus too large for 32-bit generator masks");
  }
}

ExtForm ExtForm::scalar(int genus, Complex c) {
  ExtForm f(genus);
  f.add_term(0, 0, c);
  return f;
}

ExtForm ExtForm::generator(int genus, int index, bool anti) {
  ExtForm f(genus);
  if (index < 0 || index >= f.generator_count()) {
    throw Error(ErrorCode::DimensionMismatch, "generator index out of range");
  }
  const Mask bit = Mask{1} << index;
  f.add_term(anti ? 0 : bit, anti ? bit : 0, 1.0);
  return f;
}

ExtForm ExtForm::term(int genus, Mask hol, Mask anti, Complex c) {
  ExtForm f(genus);
  const Mask limit = f.generator_count() == 32 ? ~Mask{0} : (Mask{1} << f.generator_count()) - 1;
  if ((hol & ~limit) != 0 || (anti & ~limit) != 0) {
    throw Error(ErrorCode::DimensionMismatch, "term uses generators beyond the genus");
  }
  f.add_term(hol, anti, c);
  return f;
}

Complex ExtForm::coefficient(Mask hol, Mask anti) const {
  const auto it = terms_.find(Key{hol, anti});
  return it == terms_.end() ? Complex{} : it->second;
}

ExtForm ExtForm::component(int p, int q) const {
  ExtForm out(genus_);
  for (const auto& [key, c] : terms_) {
    if (popcount(key.hol) == p && popcount(key.anti) == q) out.terms_.emplace(key, c);
  }
  return out;
}

ExtForm ExtForm::degree_part(int degree) const {
  ExtForm out(genus_);
  for (const auto& [key, c] : terms_) {
    if (popcount(key.hol) + popcount(key.anti) == degree) out.terms_.emplace(key, c);
  }
  return out;
}

ExtForm ExtForm::truncated(int max_degree) const {
  ExtForm out(genus_);
  for (const auto& [key, c] : terms_) {
    if (popcount(key.hol) + popcount(key.anti) <= max_degree) out.terms_.emplace(key, c);
  }
  return out;
}

bool ExtForm::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
    return (popcount(kv.first.hol) + popcount(kv.first.anti)) % 2 == 0;
  });
}

bool ExtForm::is_homogeneous(int p, int q) const {
  return std::all_of(terms_.begin(), terms_.end(), [p, q](const auto& kv) {
    return popcount(kv.first.hol) == p && popcount(kv.first.anti) == q;
  });
}

int ExtForm::max_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, popcount(key.hol) + popcount(key.anti));
  return d;
}

double ExtForm::max_abs() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void ExtForm::add_term(Mask hol, Mask anti, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(Key{hol, anti}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

ExtForm& ExtForm::operator+=(const ExtForm& other) {
  check_same_genus(*this, other);
  for (const auto& [key, c] : other.terms_) add_term(key.hol, key.anti, c);
  return *this;
}

ExtForm& ExtForm::operator-=(const ExtForm& other) {
  check_same_genus(*this, other);
  for (const auto& [key, c] : other.terms_) add_term(key.hol, key.anti, -c);
  return *this;
}

ExtForm& ExtForm::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second == Complex{}) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

ExtForm wedge(const ExtForm& a, const ExtForm& b, int max_degree) {
  check_same_genus(a, b);
  ExtForm out(a.genus());
  if (a.is_zero() || b.is_zero()) return out;

  struct KeyHash {
    std::size_t operator()(std::uint64_t k) const noexcept { return static_cast<std::size_t>(mix64(k)); }
  };
  std::unordered_map<std::uint64_t, Complex, KeyHash> acc;
  acc.reserve(a.size() * b.size());

  for (const auto& [ka, ca] : a.terms()) {
    const int deg_a = popcount(ka.hol) + popcount(ka.anti);
    const int anti_a = popcount(ka.anti);
    for (const auto& [kb, cb] : b.terms()) {
      if ((ka.hol & kb.hol) != 0 || (ka.anti & kb.anti) != 0) continue;
      if (deg_a + popcount(kb.hol) + popcount(kb.anti) > max_degree) continue;
      // h(Sa) a(Ta) h(Sb) a(Tb): move h(Sb) past a(Ta), then merge each group.
      const int swaps = anti_a * popcount(kb.hol) + merge_inversions(ka.hol, kb.hol) +
                        merge_inversions(ka.anti, kb.anti);
      const Complex c = (swaps % 2 == 0) ? ca * cb : -(ca * cb);
      const std::uint64_t key =
          (std::uint64_t{ka.hol | kb.hol} << 32) | std::uint64_t{ka.anti | kb.anti};
      acc[key] += c;
    }
  }
  for (const auto& [key, c] : acc) {
    out.add_term(static_cast<Mask>(key >> 32), static_cast<Mask>(key & 0xffffffffULL), c);
  }
  return out;
}

ExtForm wedge_power(const ExtForm& a, int k, int max_degree) {
  if (k < 0) throw Error(ErrorCode::BadParameters, "negative wedge power");
  ExtForm out = ExtForm::one(a.genus());
  for (int i = 0; i < k; ++i) {
    out = wedge(out, a, max_degree);
    if (out.is_zero()) break;
  }
  return out;
}

ExtForm inverse_even(const ExtForm& a, int max_degree) {
  if (a.scalar_part() != Complex{1.0, 0.0}) {
    throw Error(ErrorCode::NotUnitScalar, "scalar part must be exactly 1");
  }
  if (!a.is_even()) throw Error(ErrorCode::OddComponent, "form has odd-degree terms");

  // Graded recursion b_m = -sum_{d >= 2} a_d ^ b_{m-d}, degree by degree.
  const int cap = std::min(max_degree, 2 * a.generator_count());
  std::vector<ExtForm> parts;
  std::vector<ExtForm> inv{ExtForm::one(a.genus())};
  for (int m = 2; m <= cap; m += 2) {
    parts.push_back(a.degree_part(m));
    ExtForm next(a.genus());
    for (int d = 2; d <= m; d += 2) {
      const ExtForm& ad = parts[static_cast<std::size_t>(d / 2 - 1)];
      const ExtForm& rest = inv[static_cast<std::size_t>((m - d) / 2)];
      if (ad.is_zero() || rest.is_zero()) continue;
      next -= wedge(ad, rest);
    }
    inv.push_back(std::move(next));
  }
  ExtForm result(a.genus());
  for (const ExtForm& part : inv) result += part;
  return result;
}

ExtForm conjugate(const ExtForm& a) {
  ExtForm out(a.genus());
  for (const auto& [key, c] : a.terms()) {
    // conj(c) a(S) h(T) reordered to h(T) a(S).
    const int swaps = popcount(key.hol) * popcount(key.anti);
    const Complex cc = std::conj(c);
    out.add_term(key.anti, key.hol, swaps % 2 == 0 ? cc : -cc);
  }
  return out;
}

double max_coefficient_distance(const ExtForm& a, const ExtForm& b) {
  return (a - b).max_abs();
}

Complex contract(const ExtForm& a, std::span<const SymMap> hol_vectors,
                 std::span<const SymMap> anti_vectors) {
  const int p = static_cast<int>(hol_vectors.size());
  const int q = static_cast<int>(anti_vectors.size());
  const CMatrix ph = pairing_rows(hol_vectors, a.genus());
  const CMatrix pa = pairing_rows(anti_vectors, a.genus());

  std::unordered_map<Mask, Complex> hol_minors;
  std::unordered_map<Mask, Complex> anti_minors;
  Complex total{};
  for (const auto& [key, c] : a.terms()) {
    if (popcount(key.hol) != p || popcount(key.anti) != q) continue;
    auto hit = hol_minors.find(key.hol);
    if (hit == hol_minors.end()) hit = hol_minors.emplace(key.hol, minor_on_mask(ph, key.hol)).first;
    auto ait = anti_minors.find(key.anti);
    if (ait == anti_minors.end()) {
      ait = anti_minors.emplace(key.anti, std::conj(minor_on_mask(pa, key.anti))).first;
    }
    total += c * hit->second * ait->second;
  }
  return total;
}

Complex restrict_to_plane(const ExtForm& a, const LinSubspace& plane) {
  if (plane.tag() != AmbientTag::SymMaps || plane.ambient_dim() != a.genus() * a.genus()) {
    throw Error(ErrorCode::DimensionMismatch, "plane must be a subspace of symmetric g x g matrices");
  }
  const int k = plane.dim();
  const std::vector<SymMap> basis = plane.sym_maps();
  const Complex value = contract(a, basis, basis);
  // Contraction of prod_j (i/2) dz_j ^ conj(dz_j) against its own dual basis.
  Complex volume = std::pow(Complex(0.0, 0.5), k);
  if ((k * (k - 1) / 2) % 2 == 1) volume = -volume;
  return value / volume;
}

FormMatrix::FormMatrix(int genus, int rows, int cols)
    : genus_(genus), rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows * cols), ExtForm(genus)) {}

FormMatrix FormMatrix::differential(int genus, bool anti) {
  FormMatrix m(genus, genus, genus);
  for (int a = 0; a < genus; ++a) {
    for (int b = 0; b < genus; ++b) {
      m(a, b) = ExtForm::generator(genus, generator_index(genus, a, b), anti);
    }
  }
  return m;
}

FormMatrix FormMatrix::identity(int genus, int size) {
  FormMatrix m(genus, size, size);
  for (int a = 0; a < size; ++a) m(a, a) = ExtForm::one(genus);
  return m;
}

ExtForm FormMatrix::trace() const {
  ExtForm t(genus_);
  for (int a = 0; a < std::min(rows_, cols_); ++a) t += (*this)(a, a);
  return t;
}

FormMatrix FormMatrix::scaled(Complex c) const {
  FormMatrix out = *this;
  for (auto& e : out.entries_) e *= c;
  return out;
}

double FormMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs());
  return m;
}

FormMatrix multiply(const FormMatrix& a, const FormMatrix& b, int max_degree) {
  if (a.cols() != b.rows() || a.genus() != b.genus()) {
    throw Error(ErrorCode::DimensionMismatch, "form matrix product shape mismatch");
  }
  FormMatrix out(a.genus(), a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < b.cols(); ++c) {
      ExtForm acc(a.genus());
      for (int k = 0; k < a.cols(); ++k) acc += wedge(a(r, k), b(k, c), max_degree);
      out(r, c) = std::move(acc);
    }
  }
  return out;
}

FormMatrix multiply(const FormMatrix& a, const CMatrix& s) {
  if (a.cols() != s.rows()) throw Error(ErrorCode::DimensionMismatch, "form x scalar shape mismatch");
  FormMatrix out(a.genus(), a.rows(), static_cast<int>(s.cols()));
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < s.cols(); ++c) {
      ExtForm acc(a.genus());
      for (int k = 0; k < a.cols(); ++k) {
        if (s(k, c) != Complex{}) acc += a(r, k) * s(k, c);
      }
      out(r, c) = std::move(acc);
    }
  }
  return out;
}

FormMatrix multiply(const CMatrix& s, const FormMatrix& a) {
  if (s.cols() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "scalar x form shape mismatch");
  FormMatrix out(a.genus(), static_cast<int>(s.rows()), a.cols());
  for (int r = 0; r < s.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      ExtForm acc(a.genus());
      for (int k = 0; k < a.rows(); ++k) {
        if (s(r, k) != Complex{}) acc += a(k, c) * s(r, k);
      }
      out(r, c) = std::move(acc);
    }
  }
  return out;
}

FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "form matrix sum shape mismatch");
  }
  FormMatrix out = a;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  }
  return out;
}

FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) {
  return a + b.scaled(-1.0);
}

ExtForm determinant(const FormMatrix& m, int max_degree) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const int size = m.rows();
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  ExtForm det(m.genus());
  do {
    int inversions = 0;
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    ExtForm prod = ExtForm::one(m.genus());
    for (int r = 0; r < size && !prod.is_zero(); ++r) {
      prod = wedge(prod, m(r, perm[static_cast<std::size_t>(r)]), max_degree);
    }
    if (inversions % 2 == 1) prod *= -1.0;
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace hodge
