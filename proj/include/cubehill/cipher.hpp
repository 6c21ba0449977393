#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubehill/encoding.hpp"
#include "cubehill/matrix.hpp"

namespace cubehill {

inline constexpr std::uint32_t kFormatVersion = 1;

/// Everything both parties must share: K, the Fibonacci exponent, the
/// rotation count and the seed of the per-position prime stream.
struct KeyMaterial {
  IntMatrix key_matrix = IntMatrix::identity(2);
  std::uint64_t fib_index = 1;
  QuarterTurn quarter_turns;
  std::uint64_t prime_seed = 0;

  friend bool operator==(const KeyMaterial& a, const KeyMaterial& b) {
    return a.key_matrix == b.key_matrix && a.fib_index == b.fib_index &&
           a.quarter_turns.normalized() == b.quarter_turns.normalized() &&
           a.prime_seed == b.prime_seed;
  }
};

struct KeyValidation {
  bool valid = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const noexcept { return valid; }
};

KeyValidation validate_key(const KeyMaterial& key);

/// Random key with K entries in [-99, 99], rejected until K has independent
/// columns; fib_index in [1, 40]; quarter_turns in [0, 3]. Deterministic in seed.
KeyMaterial keygen(std::uint64_t rng_seed);

/// A 2x2 integer block, entries vectorized row-major.
struct Block {
  IntMatrix m = IntMatrix(2, 2);

  Block() = default;
  explicit Block(IntMatrix matrix);
  Block(BigInt a, BigInt b, BigInt c, BigInt d);

  std::array<BigInt, 4> vec() const;

  friend bool operator==(const Block&, const Block&) = default;
};

struct Blocks {
  std::vector<Block> blocks;
  unsigned pad_count = 0;
};

/// Chunks of four, row-major, trailing chunk zero-padded.
Blocks blockify(std::span<const EncodedValue> values);

/// Inverse of blockify. Pad positions must hold exactly 0 (Errc::corrupt_ciphertext).
std::vector<EncodedValue> deblockify(std::span<const Block> blocks, unsigned pad_count);

/// Matrices derived once per key and reused for every block.
class KeySchedule {
 public:
  /// Throws Errc::invalid_key if validate_key fails.
  explicit KeySchedule(const KeyMaterial& key);

  /// E = (B * Q^n * R)^T * K
  Block encrypt(const Block& plain) const;

  /// B = (E * K^-1)^T * R^T * Q^-n. Throws Errc::non_integral_result on a wrong key.
  Block decrypt(const Block& cipher) const;

 private:
  IntMatrix fib_rotation_;  // Q^n * R
  IntMatrix key_;
  RatMatrix key_inverse_;
  IntMatrix inverse_tail_;  // R^T * Q^-n
};

Block encrypt_block(const Block& plain, const KeyMaterial& key);
Block decrypt_block(const Block& cipher, const KeyMaterial& key);

struct CipherOptions {
  Alphabet alphabet = Alphabet::ascii;
};

struct CiphertextEnvelope {
  std::uint32_t version = kFormatVersion;
  unsigned pad_count = 0;
  std::vector<Block> blocks;

  std::size_t symbol_count() const noexcept { return 4 * blocks.size() - pad_count; }

  friend bool operator==(const CiphertextEnvelope&, const CiphertextEnvelope&) = default;
};

/// Encrypts the byte sequence of `message`, one prime per position.
/// In ASCII mode a byte >= 128 throws Errc::range_error naming its index.
CiphertextEnvelope encrypt(std::string_view message, const KeyMaterial& key,
                           CipherOptions options = {});

/// Inverse of encrypt. Failures name the block or symbol index.
std::string decrypt(const CiphertextEnvelope& envelope, const KeyMaterial& key,
                    CipherOptions options = {});

}  // namespace cubehill
