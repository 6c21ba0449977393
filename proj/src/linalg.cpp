#include <array>
#include <utility>

#include "cubehill/matrix.hpp"

namespace cubehill {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_square: return "NotSquare";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::non_integral_result: return "NonIntegralResult";
    case Errc::no_integer_root: return "NoIntegerRoot";
    case Errc::corrupt_value: return "CorruptValue";
    case Errc::range_error: return "RangeError";
    case Errc::corrupt_ciphertext: return "CorruptCiphertext";
    case Errc::invalid_key: return "InvalidKey";
    case Errc::insufficient_pairs: return "InsufficientPairs";
    case Errc::format_error: return "FormatError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

void require_square(std::size_t rows, std::size_t cols, const char* op) {
  if (rows != cols) {
    throw Error(Errc::not_square, std::string(op) + " needs a square matrix, got " +
                                      std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

BigInt det(const IntMatrix& a) {
  require_square(a.rows(), a.cols(), "det");
  const std::size_t n = a.rows();
  IntMatrix m = a;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        // Bareiss guarantees exact division by the previous pivot.
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

IntMatrix rat_to_int_matrix(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& q = a(i, j);
      if (q.get_den() != 1) {
        throw Error(Errc::non_integral_result, "entry (" + std::to_string(i) + "," +
                                                   std::to_string(j) + ") = " + q.get_str() +
                                                   " is not an integer");
      }
      out(i, j) = q.get_num();
    }
  }
  return out;
}

RowEchelon row_reduce(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pivot, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const IntMatrix& a) { return row_reduce(to_rational(a)).rank(); }

bool is_column_independent(const IntMatrix& a) {
  require_square(a.rows(), a.cols(), "is_column_independent");
  // Independent columns iff elimination finds a pivot in every column.
  return rank(a) == a.cols();
}

RatMatrix inverse_exact(const RatMatrix& a) {
  require_square(a.rows(), a.cols(), "inverse_exact");
  const std::size_t n = a.rows();
  RatMatrix augmented(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = a(i, j);
    augmented(i, n + i) = 1;
  }
  RowEchelon echelon = row_reduce(std::move(augmented));
  if (echelon.rank() < n || echelon.pivot_columns[n - 1] != n - 1) {
    throw Error(Errc::singular_matrix, "matrix is singular");
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = echelon.reduced(i, n + j);
  return out;
}

RatMatrix inverse_exact(const IntMatrix& a) {
  require_square(a.rows(), a.cols(), "inverse_exact");
  if (a.rows() != 2) return inverse_exact(to_rational(a));

  // 2x2: adjugate over determinant.
  const BigInt d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (d == 0) throw Error(Errc::singular_matrix, "matrix is singular (det = 0)");
  RatMatrix out(2, 2);
  out(0, 0) = Rational(a(1, 1), d);
  out(0, 1) = Rational(-a(0, 1), d);
  out(1, 0) = Rational(-a(1, 0), d);
  out(1, 1) = Rational(a(0, 0), d);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j).canonicalize();
  return out;
}

std::pair<BigInt, BigInt> fibonacci_pair(std::uint64_t n) {
  BigInt f = 0;  // F(k)
  BigInt g = 1;  // F(k+1)
  for (int bit = 63; bit >= 0; --bit) {
    // F(2k) = F(k) * (2F(k+1) - F(k)),  F(2k+1) = F(k)^2 + F(k+1)^2
    BigInt even = f * (2 * g - f);
    BigInt odd = f * f + g * g;
    if ((n >> bit) & 1U) {
      f = odd;
      g = even + odd;
    } else {
      f = std::move(even);
      g = std::move(odd);
    }
  }
  return {f, g};
}

IntMatrix fibonacci_q(std::uint64_t n) {
  if (n < 1) throw Error(Errc::invalid_argument, "fibonacci_q needs n >= 1");
  auto [fn, fn1] = fibonacci_pair(n);
  BigInt fn_minus_1 = fn1 - fn;
  return IntMatrix{{fn1, fn}, {fn, fn_minus_1}};
}

IntMatrix rotation(QuarterTurn turns) {
  // [[cos, -sin], [sin, cos]] at theta = k*pi/2
  static constexpr std::array<std::array<int, 2>, 4> kCosSin{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  const auto [c, s] = kCosSin[static_cast<std::size_t>(turns.normalized())];
  return IntMatrix{{BigInt(c), BigInt(-s)}, {BigInt(s), BigInt(c)}};
}

namespace {

template <typename T>
std::ostream& print_matrix(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << ']';
  }
  return os << ']';
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return print_matrix(os, m); }
std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return print_matrix(os, m); }

}  // namespace cubehill
