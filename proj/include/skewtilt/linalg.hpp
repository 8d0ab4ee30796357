#pragma once

#include "skewtilt/field.hpp"

#include <cstddef>
#include <vector>

namespace skewtilt {

/// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), field_(FieldSpec::rationals()) {}

  Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), field_(f), entries_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(const FieldSpec& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && entries_ == o.entries_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in +");
    Matrix m(*this);
    for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] += o.entries_[i];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in -");
    Matrix m(*this);
    for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] -= o.entries_[i];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, "matrix shape mismatch in *");
    Matrix m(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = at(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Scalar& b = o.at(k, j);
          if (!b.is_zero()) m.at(i, j) += a * b;
        }
      }
    return m;
  }
  Matrix operator*(const Scalar& s) const {
    Matrix m(*this);
    for (auto& e : m.entries_) e *= s;
    return m;
  }
  Matrix operator-() const {
    Matrix m(*this);
    for (auto& e : m.entries_) e = -e;
    return m;
  }

  Matrix transpose() const {
    Matrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  /// Stacks rows of `o` below this matrix.
  Matrix vstack(const Matrix& o) const {
    require(cols_ == o.cols_, "vstack width mismatch");
    Matrix m(field_, rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
    return m;
  }

  Matrix hstack(const Matrix& o) const {
    require(rows_ == o.rows_, "hstack height mismatch");
    Matrix m(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
    }
    return m;
  }

  std::vector<Scalar> row(std::size_t r) const {
    std::vector<Scalar> v(cols_, Scalar::zero(field_));
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
  }

  static void require(bool cond, const char* msg) {
    if (!cond) throw Error(ErrorCode::Internal, msg);
  }

 private:
  std::size_t rows_, cols_;
  FieldSpec field_;
  std::vector<Scalar> entries_;
};

struct RrefResult {
  Matrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form with deterministic pivoting: columns are
/// processed left to right and the first nonzero entry from the top is
/// the pivot.
inline RrefResult rref(const Matrix& m) {
  RrefResult res{m, 0, {}};
  Matrix& a = res.matrix;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t sel = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r) {
      if (!a.at(r, col).is_zero()) { sel = r; break; }
    }
    if (sel == a.rows()) continue;
    if (sel != pivot_row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(pivot_row, j));
    Scalar inv = a.at(pivot_row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a.at(pivot_row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row) continue;
      Scalar f = a.at(r, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < a.cols(); ++j) a.at(r, j) -= f * a.at(pivot_row, j);
    }
    res.pivot_cols.push_back(col);
    ++pivot_row;
  }
  res.rank = res.pivot_cols.size();
  return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Canonical kernel basis read off the rref: one column per free variable,
/// in increasing free-column order.
inline std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const FieldSpec& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(f));
    v[free_col] = Scalar::one(f);
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
      v[r.pivot_cols[i]] = -r.matrix.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a·x = b; returns false when inconsistent. Free variables are set
/// to zero, so the solution is deterministic.
inline bool solve(const Matrix& a, const std::vector<Scalar>& b, std::vector<Scalar>& x) {
  Matrix::require(a.rows() == b.size(), "solve: rhs size mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(aug);
  for (auto c : r.pivot_cols)
    if (c == a.cols()) return false;
  x.assign(a.cols(), Scalar::zero(a.field()));
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) x[r.pivot_cols[i]] = r.matrix.at(i, a.cols());
  return true;
}

inline bool is_invertible(const Matrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

inline Matrix inverse(const Matrix& m) {
  Matrix::require(m.rows() == m.cols(), "inverse of non-square matrix");
  Matrix aug = m.hstack(Matrix::identity(m.field(), m.rows()));
  RrefResult r = rref(aug);
  if (r.rank < m.rows() || (r.rank > 0 && r.pivot_cols[r.rank - 1] >= m.rows()))
    throw Error(ErrorCode::InvalidInput, "matrix not invertible");
  Matrix inv(m.field(), m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) inv.at(i, j) = r.matrix.at(i, m.rows() + j);
  return inv;
}

/// Row space basis in rref form (deterministic).
inline std::vector<std::vector<Scalar>> row_space_basis(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t i = 0; i < r.rank; ++i) basis.push_back(r.matrix.row(i));
  return basis;
}

inline Matrix from_rows(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Matrix::require(rows[i].size() == cols, "from_rows: ragged input");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

/// Indices of standard coordinates completing the row space of `m` to the
/// full space: the non-pivot columns of the rref of the stacked basis.
inline std::vector<std::size_t> complement_coords(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) out.push_back(j);
  return out;
}

}  // namespace skewtilt
