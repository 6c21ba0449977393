#include "cubehill/encoding.hpp"

#include <string>

#include "cubehill/prime_stream.hpp"

namespace cubehill {

Symbol::Symbol(unsigned code, Alphabet alphabet) : code_(code) {
  if (code > max_code(alphabet)) {
    throw Error(Errc::range_error, "symbol code " + std::to_string(code) + " exceeds " +
                                       std::to_string(max_code(alphabet)));
  }
}

BigInt cantor_pair(const BigInt& k1, const BigInt& k2) {
  if (k1 < 0 || k2 < 0) throw Error(Errc::invalid_argument, "cantor_pair needs k1, k2 >= 0");
  const BigInt s = k1 + k2;
  return s * (s + 1) / 2 + k2;
}

std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z) {
  if (z < 0) throw Error(Errc::invalid_argument, "cantor_unpair needs z >= 0");
  // w = floor((sqrt(8z + 1) - 1) / 2) is the largest w with w(w+1)/2 <= z.
  const BigInt root = sqrt(BigInt(8 * z + 1));
  const BigInt w = (root - 1) / 2;
  const BigInt k2 = z - w * (w + 1) / 2;
  return {w - k2, k2};
}

namespace {

void require_prime(std::uint32_t prime) {
  if (!is_prime(prime)) {
    throw Error(Errc::invalid_argument, std::to_string(prime) + " is not a prime");
  }
}

BigInt cubic_lhs(const BigInt& n) { return n * n * n - n; }

}  // namespace

EncodedValue encode_symbol(Symbol x, std::uint32_t prime) {
  require_prime(prime);
  const BigInt n = BigInt(x.code()) + prime;
  BigInt product = (n - 1) * n * (n + 1);
  // Three consecutive integers: always divisible by 2 and by 3.
  BigInt t;
  mpz_divexact_ui(t.get_mpz_t(), product.get_mpz_t(), 6);
  return {std::move(t)};
}

BigInt solve_depressed_cubic(const BigInt& t) {
  if (t < 0) throw Error(Errc::invalid_argument, "solve_depressed_cubic needs t >= 0");
  const BigInt target = 6 * t;

  // With 6t < 2^bits and c = 2^ceil(bits/3), (c+1)^3 - (c+1) >= c^3 > 6t.
  const std::size_t bits = mpz_sizeinbase(target.get_mpz_t(), 2);
  BigInt hi;
  mpz_ui_pow_ui(hi.get_mpz_t(), 2, (bits + 2) / 3);
  hi += 1;
  BigInt lo = 2;

  // Smallest n in [lo, hi] with n^3 - n >= 6t; f is strictly increasing for n >= 1.
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (cubic_lhs(mid) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (cubic_lhs(lo) != target) {
    throw Error(Errc::no_integer_root, "n^3 - n = 6t has no integer root for t = " + t.get_str());
  }
  return lo;
}

Symbol decode_symbol(const EncodedValue& value, std::uint32_t prime, Alphabet alphabet) {
  require_prime(prime);
  BigInt n;
  try {
    n = solve_depressed_cubic(value.t);
  } catch (const Error& e) {
    if (e.code() == Errc::no_integer_root || e.code() == Errc::invalid_argument) {
      throw Error(Errc::corrupt_value, e.what());
    }
    throw;
  }
  const BigInt code = n - prime;
  if (code < 0 || code > max_code(alphabet)) {
    throw Error(Errc::range_error, "decoded code " + code.get_str() + " outside [0, " +
                                       std::to_string(max_code(alphabet)) + "] for prime " +
                                       std::to_string(prime));
  }
  return Symbol(static_cast<unsigned>(code.get_ui()), alphabet);
}

bool divisibility_check(const BigInt& start, std::uint32_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "divisibility_check needs n >= 1");
  BigInt product = 1;
  for (std::uint32_t i = 0; i < n; ++i) product *= start + i;
  return mpz_divisible_ui_p(product.get_mpz_t(), n) != 0;
}

}  // namespace cubehill
