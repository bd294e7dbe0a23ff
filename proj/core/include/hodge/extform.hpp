#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hodge/linalg.hpp"

namespace hodge {

/// Number of independent coordinates tau_ab (a <= b) of a g x g symmetric matrix.
constexpr int generator_count(int genus) noexcept { return genus * (genus + 1) / 2; }

/// Linear index of the generator d tau_ab; symmetric in (a, b). Pairs are
/// ordered row-major over the upper triangle.
int generator_index(int genus, int a, int b);
std::pair<int, int> generator_pair(int genus, int index);

/// No truncation: every degree up to 2 * generator_count survives.
inline constexpr int kNoDegreeCap = std::numeric_limits<int>::max();

/// Element of the exterior algebra at a point of the Siegel space, generated
/// by the holomorphic 1-forms d tau_ab and their conjugates.
///
/// A term (hol, anti, c) stands for
///   c * d tau_{s1} ^ ... ^ d tau_{sp} ^ conj(d tau_{t1}) ^ ... ^ conj(d tau_{tq})
/// with s1 < ... < sp the set bits of `hol` and t1 < ... < tq those of `anti`.
/// Zero coefficients are never stored.
class ExtForm {
 public:
  using Mask = std::uint32_t;

  struct Key {
    Mask hol = 0;
    Mask anti = 0;
    auto operator<=>(const Key&) const = default;
  };

  using TermMap = std::map<Key, Complex>;

  ExtForm() = default;
  explicit ExtForm(int genus);

  static ExtForm scalar(int genus, Complex c);
  static ExtForm one(int genus) { return scalar(genus, 1.0); }
  /// d tau_index (anti = false) or its conjugate (anti = true).
  static ExtForm generator(int genus, int index, bool anti = false);
  static ExtForm term(int genus, Mask hol, Mask anti, Complex c);

  int genus() const noexcept { return genus_; }
  int generator_count() const noexcept { return hodge::generator_count(genus_); }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Complex coefficient(Mask hol, Mask anti) const;
  Complex scalar_part() const { return coefficient(0, 0); }
  /// Bidegree (p, q) part.
  ExtForm component(int p, int q) const;
  /// All terms of total degree `degree`.
  ExtForm degree_part(int degree) const;
  ExtForm truncated(int max_degree) const;
  bool is_even() const;
  bool is_homogeneous(int p, int q) const;
  int max_degree() const;
  double max_abs() const;

  /// Adds c to the coefficient of a canonical term, dropping exact zeros.
  void add_term(Mask hol, Mask anti, Complex c);

  ExtForm& operator+=(const ExtForm& other);
  ExtForm& operator-=(const ExtForm& other);
  ExtForm& operator*=(Complex c);

  friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
  friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
  friend ExtForm operator*(ExtForm a, Complex c) { return a *= c; }
  friend ExtForm operator*(Complex c, ExtForm a) { return a *= c; }
  friend ExtForm operator-(ExtForm a) { return a *= -1.0; }

 private:
  int genus_ = 0;
  TermMap terms_;
};

/// Exterior product, discarding components of total degree above `max_degree`.
ExtForm wedge(const ExtForm& a, const ExtForm& b, int max_degree = kNoDegreeCap);
/// k-fold wedge power; power 0 is the unit.
ExtForm wedge_power(const ExtForm& a, int k, int max_degree = kNoDegreeCap);

/// Inverse of an even form with scalar part exactly 1. The series
/// 1 - u + u^2 - ... in the nilpotent part u terminates.
ExtForm inverse_even(const ExtForm& a, int max_degree = kNoDegreeCap);

/// Complex conjugation; an involution.
ExtForm conjugate(const ExtForm& a);

/// Largest coefficient of a - b.
double max_coefficient_distance(const ExtForm& a, const ExtForm& b);

/// Pairs the form with holomorphic tangent vectors (p of them) and
/// antiholomorphic ones (q of them). d tau_ab evaluates to M_ab; the
/// antiholomorphic pairing uses conjugated entries. Components of other
/// bidegrees contribute zero.
Complex contract(const ExtForm& a, std::span<const SymMap> hol_vectors,
                 std::span<const SymMap> anti_vectors);

/// Coefficient of a (k, k)-form against the volume form of a complex k-plane
/// of symmetric matrices (orthonormal basis, Frobenius product). The sign is
/// basis independent; the form is non-negative on the plane iff the value is.
Complex restrict_to_plane(const ExtForm& a, const LinSubspace& plane);

/// g x g matrix of forms.
class FormMatrix {
 public:
  FormMatrix() = default;
  FormMatrix(int genus, int rows, int cols);
  /// The matrix of holomorphic generators d tau (anti = false) or its
  /// conjugate; generator (a, b) sits at both (a, b) and (b, a).
  static FormMatrix differential(int genus, bool anti);
  static FormMatrix identity(int genus, int size);

  int genus() const noexcept { return genus_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  ExtForm& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
  const ExtForm& operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r * cols_ + c)];
  }

  ExtForm trace() const;
  FormMatrix scaled(Complex c) const;
  double max_abs() const;

 private:
  int genus_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<ExtForm> entries_;
};

/// Products evaluate entries left to right with wedge; scalar matrices commute
/// past forms.
FormMatrix multiply(const FormMatrix& a, const FormMatrix& b, int max_degree = kNoDegreeCap);
FormMatrix multiply(const FormMatrix& a, const CMatrix& s);
FormMatrix multiply(const CMatrix& s, const FormMatrix& a);
FormMatrix operator+(const FormMatrix& a, const FormMatrix& b);
FormMatrix operator-(const FormMatrix& a, const FormMatrix& b);

/// Determinant by Leibniz expansion with wedge products in row order.
ExtForm determinant(const FormMatrix& m, int max_degree = kNoDegreeCap);

}  // namespace hodge
