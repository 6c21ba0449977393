#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cubehill_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string fixture(const std::string& name) {
    return std::string(CUBEHILL_FIXTURE_DIR) + "/" + name;
  }

  /// Runs the CLI with `args`, stderr captured to err.txt. Returns the exit status.
  int run(const std::string& args) const {
    const std::string cmd =
        std::string(CUBEHILL_CLI) + " " + args + " 2> \"" + path("err.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  static void spit(const std::string& p, const std::string& data) {
    std::ofstream(p, std::ios::binary) << data;
  }

  std::string stderr_text() const { return slurp(path("err.txt")); }

  fs::path dir_;
};

TEST_F(CliTest, KeygenEncryptDecryptRoundTrip) {
  std::string message;
  for (int i = 0; i < 300; ++i) message.push_back(static_cast<char>((i * 37) % 128));
  spit(path("msg"), message);
  ASSERT_EQ(run("keygen --seed 11 --out " + path("key")), 0);
  ASSERT_EQ(run("encrypt --key " + path("key") + " --in " + path("msg") + " --out " + path("ct")), 0);
  ASSERT_EQ(run("decrypt --key " + path("key") + " --in " + path("ct") + " --out " + path("out")), 0);
  EXPECT_EQ(slurp(path("out")), message);
}

TEST_F(CliTest, OutputsAreDeterministic) {
  spit(path("msg"), "determinism");
  ASSERT_EQ(run("keygen --seed 5 --out " + path("k1")), 0);
  ASSERT_EQ(run("keygen --seed 5 --out " + path("k2")), 0);
  EXPECT_EQ(slurp(path("k1")), slurp(path("k2")));
  ASSERT_EQ(run("encrypt --key " + path("k1") + " --in " + path("msg") + " --out " + path("c1")), 0);
  ASSERT_EQ(run("encrypt --key " + path("k1") + " --in " + path("msg") + " --out " + path("c2")), 0);
  EXPECT_EQ(slurp(path("c1")), slurp(path("c2")));
}

TEST_F(CliTest, WorkedExampleGoldenFile) {
  ASSERT_EQ(run("encrypt --key " + fixture("worked_example.key.json") + " --in " +
                fixture("worked_example.txt") + " --out " + path("ct")),
            0);
  EXPECT_EQ(slurp(path("ct")), slurp(fixture("worked_example.ct.json")));
  ASSERT_EQ(run("decrypt --key " + fixture("worked_example.key.json") + " --in " +
                fixture("worked_example.ct.json") + " --out " + path("out")),
            0);
  EXPECT_EQ(slurp(path("out")), "A");
}

TEST_F(CliTest, IndependentGoldenCiphertext) {
  ASSERT_EQ(run("encrypt --key " + fixture("seed7.key.json") + " --in " + fixture("hello.txt") +
                " --out " + path("ct")),
            0);
  EXPECT_EQ(slurp(path("ct")), slurp(fixture("hello_seed7.ct.json")));
}

TEST_F(CliTest, WrongKeyExitsFourWithoutOutput) {
  spit(path("msg"), "a secret message that is long enough to span blocks");
  ASSERT_EQ(run("keygen --seed 1 --out " + path("k1")), 0);
  ASSERT_EQ(run("encrypt --key " + path("k1") + " --in " + path("msg") + " --out " + path("ct")), 0);
  for (int seed = 2; seed < 12; ++seed) {
    ASSERT_EQ(run("keygen --seed " + std::to_string(seed) + " --out " + path("k2")), 0);
    EXPECT_EQ(run("decrypt --key " + path("k2") + " --in " + path("ct") + " --out " + path("out")), 4)
        << "seed " << seed;
    EXPECT_FALSE(fs::exists(path("out")));
    const std::string err = stderr_text();
    EXPECT_EQ(std::count(err.begin(), err.end(), '\n'), 1) << err;
  }
  for (const auto& entry : fs::directory_iterator(dir_)) {
    EXPECT_EQ(entry.path().filename().string().find(".tmp-"), std::string::npos);
  }
}

TEST_F(CliTest, StdinStdoutStreaming) {
  spit(path("msg"), "piped text");
  ASSERT_EQ(run("keygen --seed 3 --out " + path("key")), 0);
  const std::string cli = CUBEHILL_CLI;
  const std::string cmd = "cat \"" + path("msg") + "\" | " + cli + " encrypt --key " + path("key") +
                          " --in - --out - | " + cli + " decrypt --key " + path("key") +
                          " --in - --out - > \"" + path("out") + "\"";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(path("out")), "piped text");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("encrypt --in x"), 2);

  spit(path("msg"), "hi");
  EXPECT_EQ(run("encrypt --key " + path("missing") + " --in " + path("msg")), 5);

  spit(path("singular"),
       "{\n  \"version\": 1,\n  \"k\": [\"1\", \"2\", \"2\", \"4\"],\n  \"fib_index\": \"1\",\n"
       "  \"quarter_turns\": \"0\",\n  \"prime_seed\": \"1\"\n}\n");
  EXPECT_EQ(run("encrypt --key " + path("singular") + " --in " + path("msg")), 3);
  spit(path("garbage_key"), "{ nope");
  EXPECT_EQ(run("encrypt --key " + path("garbage_key") + " --in " + path("msg")), 3);

  ASSERT_EQ(run("keygen --seed 4 --out " + path("key")), 0);
  spit(path("garbage_ct"), "[]");
  EXPECT_EQ(run("decrypt --key " + path("key") + " --in " + path("garbage_ct")), 4);

  spit(path("utf8"), "caf\xc3\xa9");
  EXPECT_EQ(run("encrypt --key " + path("key") + " --in " + path("utf8") + " --out " + path("ct")), 2);
  EXPECT_NE(stderr_text().find("index 3"), std::string::npos) << stderr_text();
  EXPECT_EQ(run("encrypt --byte-mode --key " + path("key") + " --in " + path("utf8") + " --out " +
                path("ct")),
            0);
  EXPECT_EQ(run("decrypt --byte-mode --key " + path("key") + " --in " + path("ct") + " --out " +
                path("out")),
            0);
  EXPECT_EQ(slurp(path("out")), "caf\xc3\xa9");

  EXPECT_EQ(run("keygen --out " + path("no/such/dir/key")), 5);
}

TEST_F(CliTest, AttackFromSampledAndFilePairs) {
  ASSERT_EQ(run("keygen --seed 21 --out " + path("key")), 0);
  ASSERT_EQ(run("attack --key " + path("key") + " --sample 6 --seed 2 --emit-pairs " + path("pairs") +
                " --out " + path("r1")),
            0);
  EXPECT_NE(slurp(path("r1")).find("\"verified\": true"), std::string::npos);
  ASSERT_EQ(run("attack --pairs " + path("pairs") + " --out " + path("r2")), 0);
  EXPECT_EQ(slurp(path("r1")), slurp(path("r2")));

  ASSERT_EQ(run("attack --key " + path("key") + " --sample 3 --emit-pairs " + path("few")), 2);
  EXPECT_NE(stderr_text().find("InsufficientPairs"), std::string::npos);
  EXPECT_EQ(run("attack"), 2);
}

TEST_F(CliTest, AvalancheAndBenchReports) {
  ASSERT_EQ(run("keygen --seed 8 --out " + path("key")), 0);
  ASSERT_EQ(run("avalanche --key " + path("key") + " --length 40 --trials 50 --seed 1 --out " +
                path("av.json")),
            0);
  const std::string av = slurp(path("av.json"));
  EXPECT_NE(av.find("\"locality_histogram\": {\"1\": 50}"), std::string::npos) << av;
  ASSERT_EQ(run("avalanche --key " + path("key") + " --length 40 --trials 50 --seed 1 --out " +
                path("av2.json")),
            0);
  EXPECT_EQ(av, slurp(path("av2.json")));
  ASSERT_EQ(run("avalanche --format csv --key " + path("key") + " --trials 5 --out " + path("av.csv")), 0);
  EXPECT_EQ(slurp(path("av.csv")), "changed_blocks,trials\n1,5\n");

  ASSERT_EQ(run("bench --key " + path("key") + " --lengths 4,8,16 --repetitions 1 --format csv --out " +
                path("bench.csv")),
            0);
  const std::string csv = slurp(path("bench.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(run("bench --key " + path("key") + " --lengths 8,4"), 2);
  EXPECT_EQ(run("avalanche --key " + path("key") + " --trials 0"), 2);
}

}  // namespace
