#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubehill/cipher.hpp"
#include "cubehill/prime_stream.hpp"

namespace cubehill {

// ---------------------------------------------------------------------------
// Avalanche

struct AvalancheReport {
  std::size_t trials = 0;
  std::size_t message_length = 0;
  Rational mean_changed_block_fraction;
  /// Bit-level difference over the canonical ciphertext serialization.
  Rational mean_changed_bit_fraction;
  /// Number of changed ciphertext blocks -> number of trials.
  std::map<std::size_t, std::size_t> locality_histogram;

  /// True when every trial changed exactly one block.
  bool diffusion_confined_to_one_block() const;

  /// Human-readable verdict comparing the measurement with whole-ciphertext diffusion.
  std::string finding() const;
};

/// Encrypts random ASCII messages and one-character variants of them, and
/// records how much of the ciphertext changed.
AvalancheReport avalanche_test(const KeyMaterial& key, std::size_t message_length,
                               std::size_t trials, std::uint64_t rng_seed);

/// Differing bits between two byte strings; the length difference counts as 8 bits per byte.
std::size_t bit_distance(std::string_view a, std::string_view b);

std::string serialize_avalanche(const AvalancheReport& report);
/// Columns: changed_blocks,trials
std::string avalanche_csv(const AvalancheReport& report);

// ---------------------------------------------------------------------------
// Known-plaintext attack on the per-block linear layer

struct KnownPair {
  Block plaintext;   // t-value block
  Block ciphertext;
};

struct AttackResult {
  /// vec(E) = composite_map * vec(B), blocks vectorized row-major.
  RatMatrix composite_map = RatMatrix(4, 4);
  std::size_t pairs_used = 0;
  bool verified = false;

  /// Applies the recovered map: the ciphertext the key would produce for `plaintext`.
  Block forward(const Block& plaintext) const;

  /// Inverts the recovered map: the t-value block behind `ciphertext`.
  /// Throws Errc::non_integral_result if the map does not land on integers.
  Block recover(const Block& ciphertext) const;
};

/// Solves for the 4x4 map by exact Gaussian elimination.
/// Throws Errc::insufficient_pairs if the plaintext blocks span fewer than 4 dimensions.
AttackResult known_plaintext_attack(std::span<const KnownPair> pairs);

/// Intercepted-traffic stand-in: random encoded symbols, blockified and encrypted under `key`.
std::vector<KnownPair> sample_known_pairs(const KeyMaterial& key, std::size_t count,
                                          std::uint64_t rng_seed);

/// Pairs file:
///   {"version": 1, "pairs": [{"plaintext": [4 decimals], "ciphertext": [4 decimals]}, ...]}
std::string serialize_pairs(std::span<const KnownPair> pairs);
std::vector<KnownPair> parse_pairs(std::string_view text);

/// Rationals as "p" or "p/q".
std::string serialize_attack(const AttackResult& result);

// ---------------------------------------------------------------------------
// Runtime scaling

struct BenchRow {
  std::size_t message_length = 0;
  std::chrono::nanoseconds encrypt_time{};
  std::chrono::nanoseconds decrypt_time{};
  std::size_t ciphertext_bytes = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  /// Least-squares slope of log(encrypt time) against log(length).
  double encrypt_growth_exponent() const;

  /// Largest |residual| / observed over an affine fit of ciphertext_bytes to length.
  double bytes_affine_max_relative_residual() const;
};

/// Median-of-repetitions wall time per length. Lengths must be strictly increasing.
BenchReport benchmark(std::span<const std::size_t> lengths, const KeyMaterial& key,
                      std::size_t repetitions, std::uint64_t rng_seed = 0);

std::string serialize_bench(const BenchReport& report);
/// Columns: message_length,encrypt_ns,decrypt_ns,ciphertext_bytes
std::string bench_csv(const BenchReport& report);

/// Deterministic random ASCII text.
std::string random_ascii(XorShift64Star& rng, std::size_t length);

}  // namespace cubehill
