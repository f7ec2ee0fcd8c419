#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "spectre/error.hpp"
#include "spectre/rational.hpp"
#include "spectre/upoly.hpp"

namespace spectre {

/// Dense row-major matrix. T{} must be the additive identity and T(Rational(1))
/// the multiplicative one.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(ErrorKind::Internal, "ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(Rational(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!spectre::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix r(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) r(i, j) = (*this)(i, first + j);
    return r;
  }

  /// [this | other]
  Matrix hcat(const Matrix& other) const {
    if (rows_ != other.rows_) fail(ErrorKind::Internal, "hcat: row mismatch");
    Matrix r(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, cols_ + j) = other(i, j);
    }
    return r;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::Internal, "matrix product: shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (spectre::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
      }
    return r;
  }

  template <class S>
  Matrix scaled(const S& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x * s;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Internal, "matrix sum: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;
/// Square matrix over Q[theta]; also used for Q[s] matrices.
using PolyMatrix = Matrix<UPoly>;
using ThetaMatrix = PolyMatrix;
using LaurentMatrix = Matrix<Laurent>;
using RatFuncMatrix = Matrix<RatFunc>;

// ------------------------------------------------------------ field algorithms
// T must be a field: Rational or RatFunc.

template <class T>
struct Echelon {
  Matrix<T> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class T>
Echelon<T> row_echelon(Matrix<T> m) {
  Echelon<T> e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(Rational(1)) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_echelon(m).pivots.size();
}

/// Basis of the right kernel {v : m v = 0}, as columns.
template <class T>
Matrix<T> nullspace(const Matrix<T>& m) {
  Echelon<T> e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<T> basis(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = T(Rational(1));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
  }
  return basis;
}

/// Basis (as columns) of the column space of m, chosen among the columns of m.
template <class T>
Matrix<T> column_basis(const Matrix<T>& m) {
  Echelon<T> e = row_echelon(m);
  Matrix<T> r(m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) r(i, k) = m(i, e.pivots[k]);
  return r;
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) fail(ErrorKind::Internal, "determinant of a non-square matrix");
  T det = T(Rational(1));
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return T{};
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    T inv = T(Rational(1)) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inverse, or throws Error(Internal) if singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.is_square()) fail(ErrorKind::Internal, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Echelon<T> e = row_echelon(m.hcat(Matrix<T>::identity(n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) fail(ErrorKind::Internal, "inverse of a singular matrix");
  return e.reduced.columns(n, n);
}

/// Solves m x = b for x (b given as columns); throws if inconsistent.
template <class T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& b) {
  Echelon<T> e = row_echelon(m.hcat(b));
  for (auto p : e.pivots)
    if (p >= m.cols()) fail(ErrorKind::Internal, "inconsistent linear system");
  Matrix<T> x(m.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, m.cols() + j);
  return x;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned e) {
  Matrix<T> r = Matrix<T>::identity(m.rows());
  for (unsigned i = 0; i < e; ++i) r = r * m;
  return r;
}

/// Basis (columns) of the intersection of two column spans.
template <class T>
Matrix<T> intersect_spans(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> neg_b = b.scaled(T(Rational(-1)));
  Matrix<T> ker = nullspace(a.hcat(neg_b));
  Matrix<T> coeffs_a = Matrix<T>(a.cols(), ker.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) coeffs_a(i, j) = ker(i, j);
  return column_basis(a * coeffs_a);
}

// ------------------------------------------------------------ exactalg API

/// Rank by exact Gaussian elimination.
inline std::size_t mat_rank(const QMatrix& m) { return rank(m); }

/// Monic characteristic polynomial det(S - m), via Hessenberg reduction.
UPoly char_poly(const QMatrix& m);

/// p(m) by Horner's rule.
QMatrix eval_poly(const UPoly& p, const QMatrix& m);

/// Jordan block sizes (descending) of a nilpotent matrix.
std::vector<std::size_t> nilpotent_jordan_type(const QMatrix& m);

struct RootFactorization {
  std::vector<std::pair<Rational, int>> roots;  // ascending by root
  UPoly remainder;                              // no rational roots; monic-scaled leftover
  Rational leading;                             // leading coefficient of the input
};

/// Splits off every linear rational factor: p = leading * prod (S - r)^m * remainder.
RootFactorization rational_root_factor(const UPoly& p);

/// Inverse over Q[theta]; throws Error(Precondition, "not unimodular") unless
/// det is a nonzero constant.
ThetaMatrix theta_mat_inverse(const ThetaMatrix& p);

int theta_degree(const ThetaMatrix& m);
/// Coefficient matrix of theta^k.
QMatrix theta_coeff(const ThetaMatrix& m, int k);
ThetaMatrix theta_from_coeffs(const std::vector<QMatrix>& coeffs);
/// theta^2 d/dtheta applied entrywise.
ThetaMatrix theta_sq_derivative(const ThetaMatrix& p);
ThetaMatrix to_theta(const QMatrix& m);

}  // namespace spectre
