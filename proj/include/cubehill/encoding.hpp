#pragma once

#include <cstdint>
#include <utility>

#include "cubehill/matrix.hpp"

namespace cubehill {

/// Upper bound on symbol codes: 7-bit ASCII by default, full bytes on request.
enum class Alphabet : std::uint8_t { ascii = 127, byte = 255 };

constexpr unsigned max_code(Alphabet alphabet) noexcept { return static_cast<unsigned>(alphabet); }

/// One character code point. Construction checks the range against the alphabet.
class Symbol {
 public:
  explicit Symbol(unsigned code, Alphabet alphabet = Alphabet::ascii);

  unsigned code() const noexcept { return code_; }

  friend bool operator==(Symbol, Symbol) = default;

 private:
  unsigned code_;
};

/// A trapdoor value t = (n^3 - n) / 6 with n = code + prime.
struct EncodedValue {
  BigInt t;

  friend bool operator==(const EncodedValue&, const EncodedValue&) = default;
};

/// Cantor pairing (k1+k2)(k1+k2+1)/2 + k2. Not used by the cipher itself.
BigInt cantor_pair(const BigInt& k1, const BigInt& k2);
std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z);

/// t = (x+y-1)(x+y)(x+y+1)/6, exact.
EncodedValue encode_symbol(Symbol x, std::uint32_t prime);

/// Inverts encode_symbol for a known prime.
///
/// Throws Errc::corrupt_value when t is not of the form (n^3-n)/6, and
/// Errc::range_error when the recovered code falls outside the alphabet
/// (the usual signature of a wrong prime).
Symbol decode_symbol(const EncodedValue& value, std::uint32_t prime,
                     Alphabet alphabet = Alphabet::ascii);

/// Unique integer n >= 2 with n^3 - n = 6t, by binary search over a bracket
/// that f(n) = n^3 - n - 6t crosses exactly once. Throws Errc::no_integer_root.
BigInt solve_depressed_cubic(const BigInt& t);

/// Whether start*(start+1)*...*(start+n-1) is divisible by n.
bool divisibility_check(const BigInt& start, std::uint32_t n);

}  // namespace cubehill
