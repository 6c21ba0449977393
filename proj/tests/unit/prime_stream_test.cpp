#include <gtest/gtest.h>

#include <array>
#include <set>

#include "cubehill/prime_stream.hpp"
#include "support/oracles.hpp"

namespace cubehill {
namespace {

// Frozen from tests/oracle/prime_stream_oracle.py.
TEST(XorShift64Star, PublishedVectors) {
  struct Vector {
    std::uint64_t seed;
    std::array<std::uint64_t, 4> outputs;
  };
  const Vector vectors[] = {
      {0, {0x7bbcb40d550682d0, 0xde7fe413d00cc9fd, 0xb3c638353c668c91, 0xe073afc0949195fc}},
      {1, {0x4b46a55df3611b9b, 0xd7e1f1410e763ef4, 0x5f14ec66975f9b06, 0x3b2c74fad44d6cdb}},
      {42, {0x31b0ece7c4f697a2, 0x9008a3b1cb686f03, 0x7c7173abd97be16f, 0x45672c8c8d6b8c4f}},
  };
  for (const auto& v : vectors) {
    XorShift64Star rng(v.seed);
    for (std::uint64_t expected : v.outputs) EXPECT_EQ(rng.next(), expected) << "seed " << v.seed;
  }
}

TEST(XorShift64Star, ZeroStateIsAvoided) {
  // splitmix64 is a bijection, so exactly one seed maps to state 0.
  for (std::uint64_t seed : {0ULL, 1ULL, ~0ULL}) EXPECT_NE(XorShift64Star(seed).state(), 0u);
}

TEST(XorShift64Star, UniformStaysInRange) {
  XorShift64Star rng(3);
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.uniform(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    ++hits[static_cast<std::size_t>(v + 3)];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 70'000; ++n) ASSERT_EQ(is_prime(n), oracle::trial_division_prime(n)) << n;
}

TEST(IsPrime, LargeKnownValues) {
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases up to 23
  EXPECT_TRUE(is_prime(1000000007ULL));
}

TEST(PrimeStream, FrozenSequences) {
  EXPECT_EQ(prime_stream(42, 8),
            (std::vector<std::uint32_t>{21499, 11839, 64091, 8969, 39827, 6703, 10937, 30203}));
  EXPECT_EQ(prime_stream(0, 8),
            (std::vector<std::uint32_t>{16649, 3319, 35053, 60821, 42989, 34319, 55871, 50873}));
  // Fixture seed whose stream starts at 13.
  EXPECT_EQ(prime_stream(196, 4), (std::vector<std::uint32_t>{13, 46489, 41947, 61211}));
}

TEST(PrimeStream, EmptyAndDeterministic) {
  EXPECT_TRUE(prime_stream(9, 0).empty());
  EXPECT_EQ(prime_stream(9, 100), prime_stream(9, 100));
  // A shorter request is a prefix of a longer one.
  const auto longer = prime_stream(9, 200);
  EXPECT_EQ(prime_stream(9, 100), std::vector<std::uint32_t>(longer.begin(), longer.begin() + 100));
}

TEST(PrimeStream, DistinctVerifiedPrimes) {
  const auto primes = prime_stream(42, 1000);
  ASSERT_EQ(primes.size(), 1000u);
  std::set<std::uint32_t> unique(primes.begin(), primes.end());
  EXPECT_EQ(unique.size(), 1000u);
  for (std::uint32_t p : primes) {
    ASSERT_TRUE(oracle::trial_division_prime(p)) << p;
    ASSERT_LT(p, kPrimeLimit);
  }
}

TEST(PrimeStream, ExhaustsEveryPrimeBelowLimit) {
  const auto all = prime_stream(5, kPrimesBelowLimit);
  std::set<std::uint32_t> unique(all.begin(), all.end());
  EXPECT_EQ(unique.size(), kPrimesBelowLimit);
  EXPECT_THROW(prime_stream(5, kPrimesBelowLimit + 1), Error);
}

}  // namespace
}  // namespace cubehill
