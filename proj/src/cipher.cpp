#include "cubehill/cipher.hpp"

#include "cubehill/prime_stream.hpp"

namespace cubehill {

KeyValidation validate_key(const KeyMaterial& key) {
  KeyValidation result;
  if (key.key_matrix.rows() != 2 || key.key_matrix.cols() != 2) {
    result.valid = false;
    result.diagnostics.push_back("key matrix must be 2x2, got " +
                                 std::to_string(key.key_matrix.rows()) + "x" +
                                 std::to_string(key.key_matrix.cols()));
  } else if (det(key.key_matrix) == 0) {
    result.valid = false;
    result.diagnostics.push_back("key matrix is singular (det = 0)");
  }
  if (key.fib_index < 1) {
    result.valid = false;
    result.diagnostics.push_back("fib_index must be >= 1");
  }
  return result;
}

KeyMaterial keygen(std::uint64_t rng_seed) {
  constexpr int kMaxAttempts = 1'000'000;
  XorShift64Star rng(rng_seed);
  KeyMaterial key;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxAttempts) {
      throw Error(Errc::invalid_key, "keygen gave up after " + std::to_string(kMaxAttempts) +
                                         " singular draws");
    }
    IntMatrix k(2, 2);
    for (std::size_t i = 0; i < 4; ++i) k(i / 2, i % 2) = static_cast<long>(rng.uniform(-99, 99));
    if (is_column_independent(k)) {
      key.key_matrix = std::move(k);
      break;
    }
  }
  key.fib_index = static_cast<std::uint64_t>(rng.uniform(1, 40));
  key.quarter_turns = QuarterTurn{rng.uniform(0, 3)};
  key.prime_seed = rng.next();
  return key;
}

Block::Block(IntMatrix matrix) : m(std::move(matrix)) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(Errc::dimension_mismatch, "a block must be 2x2");
  }
}

Block::Block(BigInt a, BigInt b, BigInt c, BigInt d)
    : m(2, 2, {std::move(a), std::move(b), std::move(c), std::move(d)}) {}

std::array<BigInt, 4> Block::vec() const {
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Blocks blockify(std::span<const EncodedValue> values) {
  Blocks out;
  out.blocks.reserve((values.size() + 3) / 4);
  for (std::size_t i = 0; i < values.size(); i += 4) {
    std::array<BigInt, 4> chunk;  // zero-initialized padding
    for (std::size_t j = 0; j < 4 && i + j < values.size(); ++j) chunk[j] = values[i + j].t;
    out.blocks.emplace_back(chunk[0], chunk[1], chunk[2], chunk[3]);
  }
  out.pad_count = static_cast<unsigned>(4 * out.blocks.size() - values.size());
  return out;
}

std::vector<EncodedValue> deblockify(std::span<const Block> blocks, unsigned pad_count) {
  if (pad_count > 3 || (blocks.empty() && pad_count != 0)) {
    throw Error(Errc::corrupt_ciphertext, "pad_count " + std::to_string(pad_count) +
                                              " is inconsistent with " +
                                              std::to_string(blocks.size()) + " blocks");
  }
  std::vector<EncodedValue> values;
  values.reserve(4 * blocks.size());
  for (const Block& b : blocks) {
    for (BigInt& v : b.vec()) values.push_back({std::move(v)});
  }
  for (std::size_t i = values.size() - pad_count; i < values.size(); ++i) {
    if (values[i].t != 0) {
      throw Error(Errc::corrupt_ciphertext, "padding position " + std::to_string(i % 4) +
                                                " of block " + std::to_string(i / 4) +
                                                " holds nonzero value " + values[i].t.get_str());
    }
  }
  values.resize(values.size() - pad_count);
  return values;
}

KeySchedule::KeySchedule(const KeyMaterial& key)
    : fib_rotation_(2, 2), key_(2, 2), key_inverse_(2, 2), inverse_tail_(2, 2) {
  if (auto check = validate_key(key); !check) {
    throw Error(Errc::invalid_key, "invalid key: " + check.diagnostics.front());
  }
  const IntMatrix q = fibonacci_q(key.fib_index);
  const IntMatrix r = rotation(key.quarter_turns);
  fib_rotation_ = mat_mul(q, r);
  key_ = key.key_matrix;
  key_inverse_ = inverse_exact(key_);
  // R is orthogonal (R^-1 = R^T) and det(Q^n) = +-1, so both inverses are integral.
  inverse_tail_ = mat_mul(transpose(r), rat_to_int_matrix(inverse_exact(q)));
}

Block KeySchedule::encrypt(const Block& plain) const {
  return Block(mat_mul(transpose(mat_mul(plain.m, fib_rotation_)), key_));
}

Block KeySchedule::decrypt(const Block& cipher) const {
  const IntMatrix unkeyed = rat_to_int_matrix(mat_mul(to_rational(cipher.m), key_inverse_));
  return Block(mat_mul(transpose(unkeyed), inverse_tail_));
}

Block encrypt_block(const Block& plain, const KeyMaterial& key) {
  return KeySchedule(key).encrypt(plain);
}

Block decrypt_block(const Block& cipher, const KeyMaterial& key) {
  return KeySchedule(key).decrypt(cipher);
}

CiphertextEnvelope encrypt(std::string_view message, const KeyMaterial& key,
                           CipherOptions options) {
  const KeySchedule schedule(key);
  const std::vector<std::uint32_t> primes = prime_stream(key.prime_seed, message.size());
  std::vector<EncodedValue> values;
  values.reserve(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) {
    const auto byte = static_cast<unsigned char>(message[i]);
    if (byte > max_code(options.alphabet)) {
      throw Error(Errc::range_error, "byte " + std::to_string(byte) + " at index " +
                                         std::to_string(i) +
                                         " is not ASCII (enable byte mode to encrypt it)");
    }
    values.push_back(encode_symbol(Symbol(byte, options.alphabet), primes[i]));
  }
  Blocks plain = blockify(values);
  CiphertextEnvelope envelope;
  envelope.pad_count = plain.pad_count;
  envelope.blocks.reserve(plain.blocks.size());
  for (const Block& b : plain.blocks) envelope.blocks.push_back(schedule.encrypt(b));
  return envelope;
}

std::string decrypt(const CiphertextEnvelope& envelope, const KeyMaterial& key,
                    CipherOptions options) {
  if (envelope.version != kFormatVersion) {
    throw Error(Errc::corrupt_ciphertext,
                "unsupported ciphertext version " + std::to_string(envelope.version));
  }
  const KeySchedule schedule(key);
  std::vector<Block> plain;
  plain.reserve(envelope.blocks.size());
  for (std::size_t i = 0; i < envelope.blocks.size(); ++i) {
    try {
      plain.push_back(schedule.decrypt(envelope.blocks[i]));
    } catch (const Error& e) {
      throw Error(e.code(), "block " + std::to_string(i) + ": " + e.what());
    }
  }
  const std::vector<EncodedValue> values = deblockify(plain, envelope.pad_count);
  const std::vector<std::uint32_t> primes = prime_stream(key.prime_seed, values.size());
  std::string message;
  message.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      const Symbol symbol = decode_symbol(values[i], primes[i], options.alphabet);
      message.push_back(static_cast<char>(symbol.code()));
    } catch (const Error& e) {
      throw Error(e.code(), "symbol " + std::to_string(i) + ": " + e.what());
    }
  }
  return message;
}

}  // namespace cubehill
