#include "cubehill/cryptanalysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "cubehill/wire_format.hpp"
#include "json.hpp"

namespace cubehill {

std::string random_ascii(XorShift64Star& rng, std::size_t length) {
  std::string s(length, '\0');
  for (char& c : s) c = static_cast<char>(rng.uniform(0, 127));
  return s;
}

// ---------------------------------------------------------------------------
// Avalanche

std::size_t bit_distance(std::string_view a, std::string_view b) {
  const std::size_t common = std::min(a.size(), b.size());
  std::size_t bits = 8 * (std::max(a.size(), b.size()) - common);
  for (std::size_t i = 0; i < common; ++i) {
    bits += static_cast<std::size_t>(
        std::popcount(static_cast<unsigned>(static_cast<unsigned char>(a[i] ^ b[i]))));
  }
  return bits;
}

bool AvalancheReport::diffusion_confined_to_one_block() const {
  auto it = locality_histogram.find(1);
  return trials > 0 && it != locality_histogram.end() && it->second == trials;
}

std::string AvalancheReport::finding() const {
  std::ostringstream os;
  const std::size_t blocks = (message_length + 3) / 4;
  if (diffusion_confined_to_one_block()) {
    os << "deviation from ideal diffusion: a single-character change altered exactly 1 of "
       << blocks << " ciphertext blocks in all " << trials
       << " trials; the change never propagates beyond its own 2x2 block";
  } else {
    os << "a single-character change altered a varying number of the " << blocks
       << " ciphertext blocks; see locality_histogram";
  }
  return os.str();
}

AvalancheReport avalanche_test(const KeyMaterial& key, std::size_t message_length,
                               std::size_t trials, std::uint64_t rng_seed) {
  if (message_length < 1) throw Error(Errc::invalid_argument, "avalanche needs message_length >= 1");
  if (trials < 1) throw Error(Errc::invalid_argument, "avalanche needs trials >= 1");
  if (auto check = validate_key(key); !check) {
    throw Error(Errc::invalid_key, "invalid key: " + check.diagnostics.front());
  }

  XorShift64Star rng(rng_seed);
  AvalancheReport report;
  report.trials = trials;
  report.message_length = message_length;
  Rational block_sum = 0;
  Rational bit_sum = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::string message = random_ascii(rng, message_length);
    std::string flipped = message;
    const auto last = static_cast<std::int64_t>(message_length) - 1;
    const auto position = static_cast<std::size_t>(rng.uniform(0, last));
    // Uniform over the 127 codes that differ from the current one.
    auto replacement = static_cast<int>(rng.uniform(0, 126));
    if (replacement >= static_cast<unsigned char>(message[position])) ++replacement;
    flipped[position] = static_cast<char>(replacement);

    const CiphertextEnvelope a = encrypt(message, key);
    const CiphertextEnvelope b = encrypt(flipped, key);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) changed += a.blocks[i] == b.blocks[i] ? 0 : 1;
    ++report.locality_histogram[changed];
    block_sum += Rational(changed, a.blocks.size());

    const std::string sa = serialize_envelope(a);
    const std::string sb = serialize_envelope(b);
    bit_sum += Rational(bit_distance(sa, sb), 8 * std::max(sa.size(), sb.size()));
  }
  report.mean_changed_block_fraction = block_sum / trials;
  report.mean_changed_bit_fraction = bit_sum / trials;
  report.mean_changed_block_fraction.canonicalize();
  report.mean_changed_bit_fraction.canonicalize();
  return report;
}

std::string serialize_avalanche(const AvalancheReport& report) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"trials\": " << report.trials
     << ",\n  \"message_length\": " << report.message_length
     << ",\n  \"mean_changed_block_fraction\": \"" << report.mean_changed_block_fraction.get_str()
     << "\",\n  \"mean_changed_bit_fraction\": \"" << report.mean_changed_bit_fraction.get_str()
     << "\",\n  \"locality_histogram\": {";
  bool first = true;
  for (const auto& [changed, count] : report.locality_histogram) {
    os << (first ? "" : ", ") << '"' << changed << "\": " << count;
    first = false;
  }
  os << "},\n  \"finding\": " << nlohmann::json(report.finding()).dump() << "\n}\n";
  return os.str();
}

std::string avalanche_csv(const AvalancheReport& report) {
  std::ostringstream os;
  os << "changed_blocks,trials\n";
  for (const auto& [changed, count] : report.locality_histogram) os << changed << ',' << count << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Known-plaintext attack

namespace {

std::array<Rational, 4> apply_map(const RatMatrix& map, const std::array<BigInt, 4>& v) {
  std::array<Rational, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out[i] += map(i, j) * v[j];
  }
  return out;
}

Block integral_block(const std::array<Rational, 4>& v) {
  RatMatrix m(2, 2, {v[0], v[1], v[2], v[3]});
  return Block(rat_to_int_matrix(m));
}

}  // namespace

Block AttackResult::forward(const Block& plaintext) const {
  return integral_block(apply_map(composite_map, plaintext.vec()));
}

Block AttackResult::recover(const Block& ciphertext) const {
  return integral_block(apply_map(inverse_exact(composite_map), ciphertext.vec()));
}

AttackResult known_plaintext_attack(std::span<const KnownPair> pairs) {
  if (pairs.empty()) throw Error(Errc::insufficient_pairs, "no pairs supplied (rank 0 of 4)");

  // Row i is [vec(B_i) | vec(E_i)]; reducing it solves vec(B)^T M^T = vec(E)^T.
  RatMatrix system(pairs.size(), 8);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto b = pairs[i].plaintext.vec();
    const auto e = pairs[i].ciphertext.vec();
    for (std::size_t j = 0; j < 4; ++j) {
      system(i, j) = b[j];
      system(i, 4 + j) = e[j];
    }
  }
  const RowEchelon echelon = row_reduce(std::move(system));
  const auto plaintext_rank = static_cast<std::size_t>(
      std::count_if(echelon.pivot_columns.begin(), echelon.pivot_columns.end(),
                    [](std::size_t c) { return c < 4; }));
  if (plaintext_rank < 4) {
    throw Error(Errc::insufficient_pairs, "plaintext blocks span rank " +
                                              std::to_string(plaintext_rank) + " of 4 from " +
                                              std::to_string(pairs.size()) + " pairs");
  }

  AttackResult result;
  result.pairs_used = pairs.size();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t j = 0; j < 4; ++j) result.composite_map(j, r) = echelon.reduced(r, 4 + j);

  result.verified = std::all_of(pairs.begin(), pairs.end(), [&](const KnownPair& p) {
    const auto predicted = apply_map(result.composite_map, p.plaintext.vec());
    const auto actual = p.ciphertext.vec();
    for (std::size_t i = 0; i < 4; ++i) {
      if (predicted[i] != actual[i]) return false;
    }
    return true;
  });
  return result;
}

std::vector<KnownPair> sample_known_pairs(const KeyMaterial& key, std::size_t count,
                                          std::uint64_t rng_seed) {
  const KeySchedule schedule(key);
  XorShift64Star rng(rng_seed);
  auto random_prime = [&rng] {
    std::uint32_t candidate;
    do {
      candidate = static_cast<std::uint32_t>(rng.next() >> 48);
    } while (!is_prime(candidate));
    return candidate;
  };
  std::vector<KnownPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<BigInt, 4> t;
    for (BigInt& v : t) {
      const auto code = static_cast<unsigned>(rng.uniform(0, 127));
      v = encode_symbol(Symbol(code), random_prime()).t;
    }
    Block plain(t[0], t[1], t[2], t[3]);
    Block cipher = schedule.encrypt(plain);
    pairs.push_back({std::move(plain), std::move(cipher)});
  }
  return pairs;
}

std::string serialize_pairs(std::span<const KnownPair> pairs) {
  auto four = [](const Block& b) {
    const auto v = b.vec();
    return "[\"" + v[0].get_str() + "\", \"" + v[1].get_str() + "\", \"" + v[2].get_str() +
           "\", \"" + v[3].get_str() + "\"]";
  };
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"pairs\": [";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << "{\"plaintext\": " << four(pairs[i].plaintext)
       << ", \"ciphertext\": " << four(pairs[i].ciphertext) << '}';
  }
  os << (pairs.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

std::vector<KnownPair> parse_pairs(std::string_view text) {
  using nlohmann::json;
  auto fail = [](const std::string& what) -> void { throw Error(Errc::format_error, what); };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("pairs file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
    fail("pairs file must be an object with a \"pairs\" array");
  }
  if (!doc.contains("version") || doc["version"] != kFormatVersion) fail("unsupported pairs file version");

  auto block = [&](const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 4) fail(where + " must be an array of 4 decimal strings");
    std::array<BigInt, 4> e;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!v[i].is_string() || e[i].set_str(v[i].get<std::string>(), 10) != 0) {
        fail(where + "[" + std::to_string(i) + "] is not a decimal string");
      }
    }
    return Block(e[0], e[1], e[2], e[3]);
  };

  std::vector<KnownPair> pairs;
  const json& list = doc["pairs"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "pairs[" + std::to_string(i) + "]";
    if (!list[i].is_object() || !list[i].contains("plaintext") || !list[i].contains("ciphertext")) {
      fail(where + " needs \"plaintext\" and \"ciphertext\"");
    }
    pairs.push_back({block(list[i]["plaintext"], where + ".plaintext"),
                     block(list[i]["ciphertext"], where + ".ciphertext")});
  }
  return pairs;
}

std::string serialize_attack(const AttackResult& result) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"pairs_used\": " << result.pairs_used
     << ",\n  \"verified\": " << (result.verified ? "true" : "false") << ",\n  \"composite_map\": [";
  for (std::size_t i = 0; i < 4; ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (std::size_t j = 0; j < 4; ++j) {
      os << (j ? ", " : "") << '"' << result.composite_map(i, j).get_str() << '"';
    }
    os << ']';
  }
  os << "\n  ]\n}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Benchmark

namespace {

template <typename F>
std::chrono::nanoseconds median_time(std::size_t repetitions, F&& body) {
  std::vector<std::chrono::nanoseconds> samples;
  samples.reserve(repetitions);
  for (std::size_t i = 0; i < repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    body();
    samples.push_back(std::chrono::steady_clock::now() - start);
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return {0, n > 0 ? sy / n : 0};
  const double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

}  // namespace

double BenchReport::encrypt_growth_exponent() const {
  std::vector<double> x, y;
  for (const BenchRow& row : rows) {
    x.push_back(std::log(static_cast<double>(row.message_length)));
    y.push_back(std::log(static_cast<double>(std::max<std::int64_t>(row.encrypt_time.count(), 1))));
  }
  return least_squares(x, y).slope;
}

double BenchReport::bytes_affine_max_relative_residual() const {
  std::vector<double> x, y;
  for (const BenchRow& row : rows) {
    x.push_back(static_cast<double>(row.message_length));
    y.push_back(static_cast<double>(row.ciphertext_bytes));
  }
  const LineFit fit = least_squares(x, y);
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)) / y[i]);
  }
  return worst;
}

BenchReport benchmark(std::span<const std::size_t> lengths, const KeyMaterial& key,
                      std::size_t repetitions, std::uint64_t rng_seed) {
  if (lengths.empty()) throw Error(Errc::invalid_argument, "benchmark needs at least one length");
  if (repetitions < 1) throw Error(Errc::invalid_argument, "benchmark needs repetitions >= 1");
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    if (lengths[i] <= lengths[i - 1]) {
      throw Error(Errc::invalid_argument, "benchmark lengths must be strictly increasing");
    }
  }
  if (auto check = validate_key(key); !check) {
    throw Error(Errc::invalid_key, "invalid key: " + check.diagnostics.front());
  }

  XorShift64Star rng(rng_seed);
  BenchReport report;
  for (std::size_t length : lengths) {
    const std::string message = random_ascii(rng, length);
    CiphertextEnvelope envelope;
    BenchRow row;
    row.message_length = length;
    row.encrypt_time = median_time(repetitions, [&] { envelope = encrypt(message, key); });
    std::string roundtrip;
    row.decrypt_time = median_time(repetitions, [&] { roundtrip = decrypt(envelope, key); });
    if (roundtrip != message) throw Error(Errc::corrupt_ciphertext, "benchmark round-trip mismatch");
    row.ciphertext_bytes = serialize_envelope(envelope).size();
    report.rows.push_back(row);
  }
  return report;
}

std::string serialize_bench(const BenchReport& report) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const BenchRow& r = report.rows[i];
    os << (i ? ",\n    " : "\n    ") << "{\"message_length\": " << r.message_length
       << ", \"encrypt_ns\": " << r.encrypt_time.count() << ", \"decrypt_ns\": " << r.decrypt_time.count()
       << ", \"ciphertext_bytes\": " << r.ciphertext_bytes << '}';
  }
  os << (report.rows.empty() ? "],\n" : "\n  ],\n");
  os << "  \"encrypt_growth_exponent\": " << report.encrypt_growth_exponent() << "\n}\n";
  return os.str();
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "message_length,encrypt_ns,decrypt_ns,ciphertext_bytes\n";
  for (const BenchRow& r : report.rows) {
    os << r.message_length << ',' << r.encrypt_time.count() << ',' << r.decrypt_time.count() << ','
       << r.ciphertext_bytes << '\n';
  }
  return os.str();
}

}  // namespace cubehill
