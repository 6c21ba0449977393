#pragma once

#include <string>
#include <string_view>

#include "cubehill/cipher.hpp"

namespace cubehill {

// Canonical text formats. Both are JSON with a fixed field order and layout,
// two-space indentation, LF line endings and a trailing newline. Big integers
// are written as decimal strings; parse -> serialize of a canonical file is
// byte-identical.
//
// Key file:
//   {
//     "version": 1,
//     "k": ["a", "b", "c", "d"],
//     "fib_index": "n",
//     "quarter_turns": "q",
//     "prime_seed": "s"
//   }
//
// Ciphertext file (one block per line, "blocks": [] when empty):
//   {
//     "version": 1,
//     "pad_count": 3,
//     "blocks": [
//       ["e11", "e12", "e21", "e22"]
//     ]
//   }

std::string serialize_key(const KeyMaterial& key);

/// Throws Errc::format_error on malformed input. Does not validate the key.
KeyMaterial parse_key(std::string_view text);

std::string serialize_envelope(const CiphertextEnvelope& envelope);

/// Throws Errc::format_error on malformed input.
CiphertextEnvelope parse_envelope(std::string_view text);

}  // namespace cubehill
