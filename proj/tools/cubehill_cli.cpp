// cubehill: keygen / encrypt / decrypt / attack / avalanche / bench.
//
// Exit codes: 0 ok, 2 bad arguments or unusable input, 3 invalid key,
// 4 corrupt ciphertext or wrong key, 5 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubehill/cipher.hpp"
#include "cubehill/cryptanalysis.hpp"
#include "cubehill/wire_format.hpp"

namespace fs = std::filesystem;
using namespace cubehill;

namespace {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 2,
  kInvalidKey = 3,
  kCorruptCiphertext = 4,
  kIoFailure = 5,
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_key:
    case Errc::singular_matrix:
      return kInvalidKey;
    case Errc::corrupt_ciphertext:
    case Errc::non_integral_result:
    case Errc::no_integer_root:
    case Errc::corrupt_value:
    case Errc::range_error:
      return kCorruptCiphertext;
    case Errc::io_error:
      return kIoFailure;
    case Errc::invalid_argument:
    case Errc::dimension_mismatch:
    case Errc::not_square:
    case Errc::insufficient_pairs:
    case Errc::format_error:
      return kBadArguments;
  }
  return kBadArguments;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path + " for reading");
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(Errc::io_error, "failed reading " + path);
  return data;
}

/// Writes to a sibling temporary file and renames it into place, so `path`
/// either keeps its old content or receives all of `data`.
void write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    if (!std::cout) throw Error(Errc::io_error, "failed writing to stdout");
    return;
  }
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp-" + std::to_string(std::random_device{}());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open " + temp.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw Error(Errc::io_error, "failed writing " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw Error(Errc::io_error, "cannot move output into " + path + ": " + ec.message());
  }
}

KeyMaterial load_key(const std::string& path) {
  const std::string text = read_input(path);
  try {
    KeyMaterial key = parse_key(text);
    if (auto check = validate_key(key); !check) {
      throw Error(Errc::invalid_key, check.diagnostics.front());
    }
    return key;
  } catch (const Error& e) {
    throw Error(Errc::invalid_key, "key file " + path + ": " + e.what());
  }
}

CiphertextEnvelope load_envelope(const std::string& path) {
  const std::string text = read_input(path);
  try {
    return parse_envelope(text);
  } catch (const Error& e) {
    throw Error(Errc::corrupt_ciphertext, "ciphertext file " + path + ": " + e.what());
  }
}

CipherOptions options_for(bool byte_mode) {
  return CipherOptions{byte_mode ? Alphabet::byte : Alphabet::ascii};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic-trapdoor Fibonacci/rotation block cipher, with cryptanalysis tools"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string key_path, input_path, output_path = "-", pairs_path, emit_pairs_path, format = "json";
  bool byte_mode = false;
  std::size_t trials = 1000, length = 40, repetitions = 5, sample = 0;
  std::vector<std::size_t> lengths{64, 128, 256, 512, 1024};

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key file from a seed");
  keygen_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
  keygen_cmd->add_option("--out", output_path, "Key file ('-' for stdout)")->capture_default_str();

  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a file");
  encrypt_cmd->add_option("--key", key_path, "Key file")->required();
  encrypt_cmd->add_option("--in", input_path, "Plaintext ('-' for stdin)")->required();
  encrypt_cmd->add_option("--out", output_path, "Ciphertext ('-' for stdout)")->capture_default_str();
  encrypt_cmd->add_flag("--byte-mode", byte_mode, "Accept bytes 128-255");

  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt_cmd->add_option("--key", key_path, "Key file")->required();
  decrypt_cmd->add_option("--in", input_path, "Ciphertext ('-' for stdin)")->required();
  decrypt_cmd->add_option("--out", output_path, "Plaintext ('-' for stdout)")->capture_default_str();
  decrypt_cmd->add_flag("--byte-mode", byte_mode, "Accept bytes 128-255");

  auto* attack_cmd = app.add_subcommand("attack", "Recover the composite 4x4 map from known pairs");
  auto* pairs_opt = attack_cmd->add_option("--pairs", pairs_path, "Pairs file");
  auto* attack_key_opt = attack_cmd->add_option("--key", key_path, "Key used to sample pairs");
  auto* sample_opt = attack_cmd->add_option("--sample", sample, "Number of pairs to sample with --key");
  attack_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  attack_cmd->add_option("--emit-pairs", emit_pairs_path, "Also write the sampled pairs here");
  attack_cmd->add_option("--out", output_path, "Result file ('-' for stdout)")->capture_default_str();
  pairs_opt->excludes(attack_key_opt);
  attack_key_opt->needs(sample_opt);
  sample_opt->needs(attack_key_opt);

  auto* avalanche_cmd = app.add_subcommand("avalanche", "Single-character avalanche measurement");
  avalanche_cmd->add_option("--key", key_path, "Key file")->required();
  avalanche_cmd->add_option("--length", length, "Message length")->capture_default_str();
  avalanche_cmd->add_option("--trials", trials, "Trial count")->capture_default_str();
  avalanche_cmd->add_option("--seed", seed, "Trial seed")->capture_default_str();
  avalanche_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  avalanche_cmd->add_option("--out", output_path, "Report file ('-' for stdout)")->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Encrypt/decrypt timing by message length");
  bench_cmd->add_option("--key", key_path, "Key file")->required();
  bench_cmd->add_option("--lengths", lengths, "Comma-separated message lengths")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--repetitions", repetitions, "Repetitions per length")->capture_default_str();
  bench_cmd->add_option("--seed", seed, "Message seed")->capture_default_str();
  bench_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", output_path, "Report file ('-' for stdout)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  try {
    if (*keygen_cmd) {
      write_output(output_path, serialize_key(keygen(seed)));
    } else if (*encrypt_cmd) {
      const KeyMaterial key = load_key(key_path);
      const std::string message = read_input(input_path);
      CiphertextEnvelope envelope;
      try {
        envelope = encrypt(message, key, options_for(byte_mode));
      } catch (const Error& e) {
        if (e.code() == Errc::range_error) throw Error(Errc::invalid_argument, e.what());
        throw;
      }
      write_output(output_path, serialize_envelope(envelope));
    } else if (*decrypt_cmd) {
      const KeyMaterial key = load_key(key_path);
      const CiphertextEnvelope envelope = load_envelope(input_path);
      write_output(output_path, decrypt(envelope, key, options_for(byte_mode)));
    } else if (*attack_cmd) {
      std::vector<KnownPair> pairs;
      if (!pairs_path.empty()) {
        pairs = parse_pairs(read_input(pairs_path));
      } else if (!key_path.empty()) {
        pairs = sample_known_pairs(load_key(key_path), sample, seed);
        if (!emit_pairs_path.empty()) write_output(emit_pairs_path, serialize_pairs(pairs));
      } else {
        std::cerr << "error: attack needs --pairs or --key with --sample\n";
        return kBadArguments;
      }
      write_output(output_path, serialize_attack(known_plaintext_attack(pairs)));
    } else if (*avalanche_cmd) {
      const AvalancheReport report = avalanche_test(load_key(key_path), length, trials, seed);
      write_output(output_path, format == "csv" ? avalanche_csv(report) : serialize_avalanche(report));
    } else if (*bench_cmd) {
      const BenchReport report = benchmark(lengths, load_key(key_path), repetitions, seed);
      write_output(output_path, format == "csv" ? bench_csv(report) : serialize_bench(report));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kOk;
}
