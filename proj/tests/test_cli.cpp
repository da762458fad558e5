#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <sstream>

#include "json.hpp"

#include "support.hpp"

using namespace oreherm;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
};

// Runs the CLI with stderr discarded and returns exit status and stdout.
CliRun run(const std::string& args) {
  const std::string cmd = std::string(OREHERMITE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(OREHERM_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("orehermite_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EliminationReproducesReferenceForm) {
  const CliRun r = run("hermite --input " + data("example3x3.txt"));
  ASSERT_EQ(r.code, 0);
  std::ifstream ref(data("example3x3_hermite.txt"));
  EXPECT_EQ(parse_matrix(r.out), parse_matrix(ref));
  EXPECT_EQ(parse_matrix(r.out), oreherm::testing::example_hermite());
}

TEST_F(Cli, AlgorithmsAgreeByteForByte) {
  const CliRun e = run("hermite --input " + data("example3x3.txt") + " --algorithm elim");
  const CliRun l = run("hermite --input " + data("example3x3.txt") + " --algorithm linsys");
  ASSERT_EQ(e.code, 0);
  ASSERT_EQ(l.code, 0);
  EXPECT_EQ(e.out, l.out);
}

TEST_F(Cli, CheckAcceptsComputedPairAndRejectsWrongShape) {
  const std::string a = data("example3x3.txt");
  const CliRun u = run("hermite --input " + a + " --algorithm linsys --emit u");
  const CliRun h = run("hermite --input " + a + " --algorithm linsys --emit h");
  ASSERT_EQ(u.code, 0);
  ASSERT_EQ(h.code, 0);
  const std::string up = write("u.txt", u.out), hp = write("h.txt", h.out);
  const CliRun ok = run("check --input " + a + " --u " + up + " --h " + hp);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("PASS"), std::string::npos);

  // U = I, H = A satisfies the product but A is not in Hermite form
  const std::string ip = write("i.txt", print_matrix(OreMatrix::identity(3)));
  const CliRun bad = run("check --input " + a + " --u " + ip + " --h " + a + " --json");
  EXPECT_EQ(bad.code, 1);
  const json j = json::parse(bad.out);
  EXPECT_TRUE(j["productOk"].get<bool>());
  EXPECT_FALSE(j["shapeOk"].get<bool>());
  EXPECT_FALSE(j["passed"].get<bool>());
}

TEST_F(Cli, EmitBothAndVerify) {
  const CliRun r = run("hermite --input " + data("example3x3.txt") + " --emit both --verify");
  ASSERT_EQ(r.code, 0);
  const auto u_at = r.out.find("# U\n"), h_at = r.out.find("# H\n");
  ASSERT_NE(u_at, std::string::npos);
  ASSERT_NE(h_at, std::string::npos);
  const OreMatrix u = parse_matrix(r.out.substr(u_at, h_at - u_at));
  const OreMatrix h = parse_matrix(r.out.substr(h_at));
  EXPECT_EQ(u * oreherm::testing::example_matrix(), h);
}

TEST_F(Cli, JsonOutput) {
  const CliRun r =
      run("hermite --input " + data("example3x3.txt") + " --algorithm linsys --json --verify");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["algorithm"], "linsys");
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["diagonalDegrees"], json::array({1, 1, 2}));
  EXPECT_LE(j["probes"].get<int>(), j["probeBudget"].get<int>());
  EXPECT_EQ(j["system"]["ahatRows"], 21);
  EXPECT_EQ(j["system"]["ahatCols"], 27);
  EXPECT_TRUE(j["verification"]["passed"].get<bool>());
  for (const auto& row : j["H"])
    for (const auto& entry : row) EXPECT_TRUE(entry.is_string());
  EXPECT_EQ(parse_entry(j["H"][2][2].get<std::string>()), oreherm::testing::example_hermite()(2, 2));
}

TEST_F(Cli, RandomIsReproducibleAndParses) {
  const std::string args = "random --n 2 --degd 1 --degt 2 --seed 17 --unimodular-steps 2";
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const OreMatrix m = parse_matrix(a.out);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_NE(run("random --n 2 --degd 1 --degt 2 --seed 18").out, a.out);
  const CliRun h = run("hermite --input " + write("m.txt", a.out) + " --verify");
  EXPECT_EQ(h.code, 0);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("hermite").code, 2);
  EXPECT_EQ(run("hermite --input " + data("example3x3.txt") + " --algorithm magic").code, 2);
  EXPECT_EQ(run("hermite --input " + (dir_ / "missing.txt").string()).code, 2);
  EXPECT_EQ(run("hermite --input " + write("bad.txt", "1 1\nD + x\n")).code, 2);
  EXPECT_EQ(run("hermite --input " + write("rect.txt", "1 2\nD; 1\n")).code, 2);
}

TEST_F(Cli, RankDeficiencyExitsOneAndNamesRows) {
  const std::string p = write("rd.txt", "2 2\nD; 1\nD^2; D\n");
  for (const char* alg : {"elim", "linsys"}) {
    const CliRun r = run("hermite --input " + p + " --json --algorithm " + alg);
    EXPECT_EQ(r.code, 1) << alg;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["error"], "rank_deficient");
    EXPECT_EQ(j["dependentRows"], json::array({0, 1})) << alg;
  }
}
