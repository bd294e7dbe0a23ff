#include "hodge/rational.hpp"

#include <random>

namespace hodge {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::column(const std::vector<Rational>& v) {
  RationalMatrix m(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "rational product shape mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "rational sum shape mismatch");
  }
  RationalMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  return *this + other.scaled(-1);
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  std::vector<Rational> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(r)] += (*this)(r, c) * v[static_cast<std::size_t>(c)];
  }
  return out;
}

std::vector<Rational> RationalMatrix::row(int r) const {
  std::vector<Rational> out(static_cast<std::size_t>(cols_));
  for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(c)] = (*this)(r, c);
  return out;
}

std::vector<Rational> RationalMatrix::col(int c) const {
  std::vector<Rational> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = (*this)(r, c);
  return out;
}

RationalMatrix RationalMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  RationalMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<int>(r), static_cast<int>(c)) = (*this)(rows[r], cols[c]);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& other) const {
  if (rows_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
  RationalMatrix out(rows_, cols_ + other.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (int c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

CMatrix RationalMatrix::to_complex() const {
  CMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).get_d();
  }
  return out;
}

std::vector<int> rref_in_place(RationalMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    const Rational inv = 1 / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RationalMatrix m) {
  return static_cast<int>(rref_in_place(m).size());
}

Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const int n = m.rows();
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    const Rational inv = 1 / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) * inv;
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  RationalMatrix r = m;
  const std::vector<int> pivots = rref_in_place(r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = -r(static_cast<int>(i), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<int> independent_rows(const RationalMatrix& m) {
  // Pivot columns of the transpose are the independent rows.
  RationalMatrix t = m.transpose();
  return rref_in_place(t);
}

std::int64_t random_int(SplitMix64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  return dist(rng);
}

std::vector<Rational> random_rational_vector(int n, SplitMix64& rng, std::int64_t bound) {
  std::vector<Rational> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = Rational(static_cast<long>(random_int(rng, bound)));
  return v;
}

}  // namespace hodge
