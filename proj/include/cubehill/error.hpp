#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubehill {

/// Failure categories raised by the library. The CLI maps each to an exit code.
enum class Errc {
  invalid_argument,
  dimension_mismatch,
  not_square,
  singular_matrix,
  non_integral_result,
  no_integer_root,
  corrupt_value,
  range_error,
  corrupt_ciphertext,
  invalid_key,
  insufficient_pairs,
  format_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cubehill
