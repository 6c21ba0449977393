#include "cubehill/prime_stream.hpp"

#include <array>
#include <limits>
#include <string>

#include "cubehill/error.hpp"

namespace cubehill {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

XorShift64Star::XorShift64Star(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = kGolden;
}

std::uint64_t XorShift64Star::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::int64_t XorShift64Star::uniform(std::int64_t lo, std::int64_t hi) noexcept {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // Accept v < 2^64 - (2^64 mod span) so every residue is equally likely.
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t excess = (kMax % span + 1) % span;
  std::uint64_t v;
  do {
    v = next();
  } while (excess != 0 && v > kMax - excess);
  return lo + static_cast<std::int64_t>(v % span);
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_stream(std::uint64_t seed, std::size_t count) {
  if (count > kPrimesBelowLimit) {
    throw Error(Errc::invalid_argument, "requested " + std::to_string(count) +
                                            " primes but only " +
                                            std::to_string(kPrimesBelowLimit) + " exist below 2^16");
  }
  std::vector<std::uint32_t> primes;
  primes.reserve(count);
  std::vector<bool> seen(kPrimeLimit, false);
  XorShift64Star rng(seed);
  while (primes.size() < count) {
    const auto candidate = static_cast<std::uint32_t>(rng.next() >> 48);
    if (seen[candidate] || !is_prime(candidate)) continue;
    seen[candidate] = true;
    primes.push_back(candidate);
  }
  return primes;
}

}  // namespace cubehill
