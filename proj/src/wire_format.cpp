#include "cubehill/wire_format.hpp"

#include <charconv>
#include <limits>
#include "json.hpp"
#include <sstream>

namespace cubehill {

namespace {

using nlohmann::json;

[[noreturn]] void format_error(const std::string& what) { throw Error(Errc::format_error, what); }

bool is_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  if (s.size() > 1 && s.front() == '0') return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

json parse_object(std::string_view text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    format_error(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) format_error(std::string(what) + " must be a JSON object");
  return doc;
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) format_error(std::string("missing field \"") + name + "\"");
  return *it;
}

BigInt decimal(const json& value, const std::string& where) {
  if (!value.is_string()) format_error(where + " must be a decimal string");
  const auto& s = value.get_ref<const std::string&>();
  if (!is_decimal(s) || s == "-0") format_error(where + " is not a canonical decimal: \"" + s + "\"");
  return BigInt(s, 10);
}

std::uint64_t decimal_u64(const json& value, const std::string& where) {
  const BigInt v = decimal(value, where);
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) format_error(where + " is out of range");
  std::uint64_t out = 0;
  const std::string s = v.get_str();
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

std::uint32_t version_of(const json& doc) {
  const json& v = field(doc, "version");
  if (!v.is_number_unsigned()) format_error("\"version\" must be a nonnegative integer");
  const auto version = v.get<std::uint64_t>();
  if (version != kFormatVersion) format_error("unsupported version " + std::to_string(version));
  return static_cast<std::uint32_t>(version);
}

void reject_unknown_fields(const json& doc, std::initializer_list<const char*> allowed) {
  for (const auto& [name, _] : doc.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || name == a;
    if (!known) format_error("unknown field \"" + name + "\"");
  }
}

std::array<BigInt, 4> four_decimals(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 4) format_error(where + " must be an array of 4 decimal strings");
  std::array<BigInt, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = decimal(value[i], where + "[" + std::to_string(i) + "]");
  return out;
}

void write_four(std::ostringstream& os, const std::array<BigInt, 4>& v) {
  os << "[\"" << v[0].get_str() << "\", \"" << v[1].get_str() << "\", \"" << v[2].get_str()
     << "\", \"" << v[3].get_str() << "\"]";
}

}  // namespace

std::string serialize_key(const KeyMaterial& key) {
  if (key.key_matrix.rows() != 2 || key.key_matrix.cols() != 2) {
    throw Error(Errc::invalid_key, "key matrix must be 2x2");
  }
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"k\": ";
  write_four(os, Block(key.key_matrix).vec());
  os << ",\n  \"fib_index\": \"" << key.fib_index << "\",\n"
     << "  \"quarter_turns\": \"" << key.quarter_turns.normalized() << "\",\n"
     << "  \"prime_seed\": \"" << key.prime_seed << "\"\n}\n";
  return os.str();
}

KeyMaterial parse_key(std::string_view text) {
  const json doc = parse_object(text, "key file");
  reject_unknown_fields(doc, {"version", "k", "fib_index", "quarter_turns", "prime_seed"});
  version_of(doc);
  KeyMaterial key;
  auto k = four_decimals(field(doc, "k"), "k");
  key.key_matrix = IntMatrix(2, 2, {k[0], k[1], k[2], k[3]});
  key.fib_index = decimal_u64(field(doc, "fib_index"), "fib_index");
  const BigInt turns = decimal(field(doc, "quarter_turns"), "quarter_turns");
  BigInt reduced;
  mpz_fdiv_r_ui(reduced.get_mpz_t(), turns.get_mpz_t(), 4);
  key.quarter_turns = QuarterTurn{static_cast<std::int64_t>(reduced.get_si())};
  key.prime_seed = decimal_u64(field(doc, "prime_seed"), "prime_seed");
  return key;
}

std::string serialize_envelope(const CiphertextEnvelope& envelope) {
  std::ostringstream os;
  os << "{\n  \"version\": " << envelope.version << ",\n  \"pad_count\": " << envelope.pad_count
     << ",\n  \"blocks\": [";
  for (std::size_t i = 0; i < envelope.blocks.size(); ++i) {
    os << (i ? ",\n    " : "\n    ");
    write_four(os, envelope.blocks[i].vec());
  }
  os << (envelope.blocks.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

CiphertextEnvelope parse_envelope(std::string_view text) {
  const json doc = parse_object(text, "ciphertext file");
  reject_unknown_fields(doc, {"version", "pad_count", "blocks"});
  CiphertextEnvelope envelope;
  envelope.version = version_of(doc);
  const json& pad = field(doc, "pad_count");
  if (!pad.is_number_unsigned() || pad.get<std::uint64_t>() > 3) {
    format_error("\"pad_count\" must be an integer in [0, 3]");
  }
  envelope.pad_count = pad.get<unsigned>();
  const json& blocks = field(doc, "blocks");
  if (!blocks.is_array()) format_error("\"blocks\" must be an array");
  if (blocks.empty() && envelope.pad_count != 0) format_error("pad_count must be 0 when there are no blocks");
  envelope.blocks.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto v = four_decimals(blocks[i], "blocks[" + std::to_string(i) + "]");
    envelope.blocks.emplace_back(v[0], v[1], v[2], v[3]);
  }
  return envelope;
}

}  // namespace cubehill
