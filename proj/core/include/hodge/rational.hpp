#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hodge/linalg.hpp"

namespace hodge {

using Rational = mpq_class;

/// Dense row-major matrix of exact rationals. Small sizes only.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  static RationalMatrix identity(int n);
  static RationalMatrix column(const std::vector<Rational>& v);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix scaled(const Rational& s) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  std::vector<Rational> row(int r) const;
  std::vector<Rational> col(int c) const;
  /// Columns listed in `cols`, rows listed in `rows`.
  RationalMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  /// Horizontal concatenation.
  RationalMatrix hstack(const RationalMatrix& other) const;
  bool is_zero() const;
  bool operator==(const RationalMatrix& other) const = default;

  CMatrix to_complex() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; returns the pivot columns.
std::vector<int> rref_in_place(RationalMatrix& m);
int rank(RationalMatrix m);
Rational determinant(RationalMatrix m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);
/// Indices of a maximal set of linearly independent rows, in order.
std::vector<int> independent_rows(const RationalMatrix& m);

/// Uniform integer in [-bound, bound].
std::int64_t random_int(SplitMix64& rng, std::int64_t bound);
std::vector<Rational> random_rational_vector(int n, SplitMix64& rng, std::int64_t bound = 1000);

}  // namespace hodge
