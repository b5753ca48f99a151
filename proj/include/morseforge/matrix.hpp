#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "morseforge/rational.hpp"

namespace morseforge {

/// Small dense row-major matrix. Used for exact Hessians, the linear part of the
/// coordinate change and float Jacobians.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r = m;
    for (auto& v : r.data_) v *= s;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<double>;

/// Exact determinant by Gaussian elimination over Q.
Rational determinant(const RationalMatrix& m);

/// Determinants of the leading 1x1, 2x2, ..., nxn submatrices.
std::vector<Rational> leading_principal_minors(const RationalMatrix& m);

/// Sylvester's criterion on a symmetric matrix: every leading minor > 0.
bool is_positive_definite(const RationalMatrix& m);

/// Exact inverse; throws DimensionError when singular or non-square.
RationalMatrix inverse(const RationalMatrix& m);

FloatMatrix to_float(const RationalMatrix& m);

}  // namespace morseforge
