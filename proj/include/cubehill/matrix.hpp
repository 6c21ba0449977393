#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubehill/error.hpp"

namespace cubehill {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw Error(Errc::invalid_argument, "matrix dimensions must be positive");
    }
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw Error(Errc::invalid_argument, "matrix dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
      throw Error(Errc::dimension_mismatch, "entry count " + std::to_string(entries_.size()) +
                                                " does not match " + std::to_string(rows) + "x" +
                                                std::to_string(cols));
    }
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) {
      throw Error(Errc::invalid_argument, "matrix dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(Errc::dimension_mismatch, "ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const T> entries() const noexcept { return entries_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> entries_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

/// Number of 90 degree turns. Only `k mod 4` is observable.
struct QuarterTurn {
  std::int64_t k = 0;

  /// k reduced into [0, 3].
  int normalized() const noexcept { return static_cast<int>(((k % 4) + 4) % 4); }
};

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::dimension_mismatch,
                "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

template <typename T>
Matrix<T> mat_add(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, "cannot add matrices of different shapes");
  }
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

template <typename T>
Matrix<T> scale(const Matrix<T>& a, const T& c) {
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = c * a(i, j);
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt det(const IntMatrix& a);

/// Exact inverse over the rationals. Throws Errc::singular_matrix when det(a) == 0.
RatMatrix inverse_exact(const IntMatrix& a);

/// Gauss-Jordan inverse of a rational matrix.
RatMatrix inverse_exact(const RatMatrix& a);

/// Reduced row echelon form plus pivot columns.
struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

RowEchelon row_reduce(RatMatrix a);

std::size_t rank(const IntMatrix& a);

/// True iff a*k = 0 only for k = 0. Decided by elimination, not the determinant.
bool is_column_independent(const IntMatrix& a);

RatMatrix to_rational(const IntMatrix& a);

/// Throws Errc::non_integral_result if any entry has a denominator other than 1.
IntMatrix rat_to_int_matrix(const RatMatrix& a);

/// Q^n = [[F(n+1), F(n)], [F(n), F(n-1)]] for n >= 1.
IntMatrix fibonacci_q(std::uint64_t n);

/// Exact rotation by k*pi/2. Table lookup, no trigonometry.
IntMatrix rotation(QuarterTurn turns);

/// F(n) and F(n+1) by fast doubling.
std::pair<BigInt, BigInt> fibonacci_pair(std::uint64_t n);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

}  // namespace cubehill
