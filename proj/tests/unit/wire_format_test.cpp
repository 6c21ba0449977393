#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>

#include "cubehill/wire_format.hpp"

namespace cubehill {
namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CUBEHILL_FIXTURE_DIR) + "/" + name, std::ios::binary);
  EXPECT_TRUE(in) << name;
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Errc parse_error_of(const std::string& text, bool key) {
  try {
    if (key) {
      parse_key(text);
    } else {
      parse_envelope(text);
    }
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return Errc::io_error;
}

TEST(WireFormat, GoldenKeysRoundTripByteIdentical) {
  for (const char* name : {"worked_example.key.json", "seed7.key.json"}) {
    const std::string text = fixture(name);
    EXPECT_EQ(serialize_key(parse_key(text)), text) << name;
  }
  EXPECT_EQ(parse_key(fixture("seed7.key.json")), keygen(7));
}

TEST(WireFormat, GoldenCiphertextsRoundTripByteIdentical) {
  for (const char* name : {"worked_example.ct.json", "hello_seed7.ct.json", "empty.ct.json"}) {
    const std::string text = fixture(name);
    EXPECT_EQ(serialize_envelope(parse_envelope(text)), text) << name;
  }
}

TEST(WireFormat, GoldenCiphertextMatchesIndependentEncryption) {
  // hello_seed7.ct.json was produced by the Python reference in tests/oracle.
  EXPECT_EQ(serialize_envelope(encrypt(fixture("hello.txt"), keygen(7))), fixture("hello_seed7.ct.json"));
  EXPECT_EQ(serialize_envelope(encrypt("A", parse_key(fixture("worked_example.key.json")))),
            fixture("worked_example.ct.json"));
}

TEST(WireFormat, SerializeParseIsIdentityOnRandomValues) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    KeyMaterial key = keygen(seed);
    key.prime_seed = rng();
    ASSERT_EQ(parse_key(serialize_key(key)), key);

    std::string message(rng() % 40, 'x');
    for (char& c : message) c = static_cast<char>(rng() % 128);
    const CiphertextEnvelope env = encrypt(message, key);
    const std::string text = serialize_envelope(env);
    ASSERT_EQ(parse_envelope(text), env);
    ASSERT_EQ(serialize_envelope(parse_envelope(text)), text);
  }
}

TEST(WireFormat, CanonicalLayout) {
  const std::string text = serialize_envelope(encrypt("abcde", keygen(1)));
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.rfind("{\n  \"version\": 1,\n  \"pad_count\": 3,\n  \"blocks\": [\n    [\"", 0), 0u);
}

TEST(WireFormat, KeyQuarterTurnsReduced) {
  std::string text = fixture("worked_example.key.json");
  text.replace(text.find("\"quarter_turns\": \"0\""), 20, "\"quarter_turns\": \"-3\"");
  EXPECT_EQ(parse_key(text).quarter_turns.normalized(), 1);
}

TEST(WireFormat, MalformedKeysRejected) {
  const std::string good = fixture("worked_example.key.json");
  auto with = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_EQ(parse_error_of("not json", true), Errc::format_error);
  EXPECT_EQ(parse_error_of("[1,2]", true), Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"version\": 1", "\"version\": 2"), true), Errc::format_error);
  EXPECT_EQ(parse_error_of(with("[\"1\", \"0\", \"0\", \"1\"]", "[\"1\", \"0\", \"0\"]"), true),
            Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"fib_index\": \"1\"", "\"fib_index\": 1"), true), Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"fib_index\": \"1\"", "\"fib_index\": \"01\""), true), Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"prime_seed\": \"196\"", "\"prime_seed\": \"18446744073709551616\""), true),
            Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"prime_seed\": \"196\"", "\"prime_seed\": \"-1\""), true),
            Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"prime_seed\": \"196\"", "\"prime_seed\": \"196\", \"extra\": 1"), true),
            Errc::format_error);
  EXPECT_EQ(parse_error_of(with("  \"prime_seed\": \"196\"\n", ""), true), Errc::format_error);
}

TEST(WireFormat, MalformedCiphertextsRejected) {
  const std::string good = fixture("worked_example.ct.json");
  auto with = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_EQ(parse_error_of(with("\"pad_count\": 3", "\"pad_count\": 4"), false), Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"pad_count\": 3", "\"pad_count\": -1"), false), Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"79079\", \"0\", \"79079\"", "\"79079\", \"0\", 79079"), false),
            Errc::format_error);
  EXPECT_EQ(parse_error_of(with("\"79079\", \"0\", \"79079\"", "\"7e4\", \"0\", \"79079\""), false),
            Errc::format_error);
  EXPECT_EQ(parse_error_of("{\"version\": 1, \"pad_count\": 2, \"blocks\": []}", false), Errc::format_error);
  EXPECT_EQ(parse_error_of("{\"version\": 1, \"pad_count\": 0}", false), Errc::format_error);
}

TEST(WireFormat, ParsingIsWhitespaceTolerant) {
  const auto env = parse_envelope("{\"version\":1,\"pad_count\":3,\"blocks\":[[\"79079\",\"0\",\"79079\",\"0\"]]}");
  EXPECT_EQ(serialize_envelope(env), fixture("worked_example.ct.json"));
}

}  // namespace
}  // namespace cubehill
