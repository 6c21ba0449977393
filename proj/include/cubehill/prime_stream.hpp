#pragma once

#include <cstdint>
#include <vector>

namespace cubehill {

/// xorshift64* (Vigna) seeded through one splitmix64 step.
///
/// The state update is x ^= x >> 12; x ^= x << 25; x ^= x >> 27 and the output
/// is x * 0x2545F4914F6CDD1D. A splitmix64 result of zero is replaced by
/// 0x9E3779B97F4A7C15 since zero is a fixed point. Not a CSPRNG.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Unbiased draw from [lo, hi] by rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

inline constexpr std::uint32_t kPrimeLimit = 1U << 16;
/// pi(2^16)
inline constexpr std::size_t kPrimesBelowLimit = 6542;

/// `count` distinct primes in [2, 2^16), a pure function of `seed`.
///
/// Candidates are the top 16 bits of successive generator outputs; composites
/// and repeats are skipped.
std::vector<std::uint32_t> prime_stream(std::uint64_t seed, std::size_t count);

}  // namespace cubehill
