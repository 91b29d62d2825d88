#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "bitretrieve/experiments.hpp"

namespace bitretrieve {
namespace {

namespace fs = std::filesystem;

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(BITRETRIEVE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bitretrieve_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, TheoryPrintsConstants) {
  const auto r = run_cli("theory --field real --n 8 --delta 0.1 --bound_D 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pointwise_m=185309\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("field=real\n"), std::string::npos);
}

TEST_F(CliTest, TheoryFromConfigFile) {
  const auto cfg = write("t.cfg", "# theory\nfield = complex\nn = 4\ndelta = 0.2\nbound_D = 1\n");
  const auto r = run_cli("theory --config " + cfg.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pointwise_m=32050\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, FlagOverridesConfig) {
  const auto cfg = write("t.cfg", "field = complex\nn = 4\ndelta = 0.5\nbound_D = 1\n");
  const auto r = run_cli("theory --config " + cfg.string() + " --delta 0.2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pointwise_m=32050\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(run_cli("theory --config " + write("bad.cfg", "colour = red\n").string()).status, 2);
  EXPECT_EQ(run_cli("theory --config " + (dir_ / "missing.cfg").string()).status, 2);
  EXPECT_EQ(run_cli("theory --n 0").status, 2);
  EXPECT_EQ(run_cli("experiment --delta nope").status, 2);
  EXPECT_EQ(run_cli("theory --no-such-flag 1").status, 2);
  EXPECT_EQ(run_cli("").status, 2);
}

TEST_F(CliTest, PointwiseToStdoutMatchesLibrary) {
  const auto r = run_cli("experiment --experiment pointwise --field real --n 2 --m_grid 10,40 --trials 3 --seed 9");
  ASSERT_EQ(r.status, 0);
  ExperimentConfig cfg;
  cfg.field = FieldKind::Real;
  cfg.n = 2;
  cfg.m_grid = {10, 40};
  cfg.trials = 3;
  cfg.master_seed = 9;
  EXPECT_EQ(r.out, format_csv(run_pointwise(cfg).records));
}

TEST_F(CliTest, OutWritesCsvAndSidecar) {
  const auto out = dir_ / "p.csv";
  const auto r = run_cli("experiment --experiment pointwise --n 3 --m_grid 20 --trials 2 --out " + out.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  const auto records = parse_csv(slurp(out));
  EXPECT_EQ(records.size(), 2U);
  EXPECT_EQ(slurp(dir_ / "p.csv.bound.csv").rfind("m,delta_bound,D\n", 0), 0U);
}

TEST_F(CliTest, UniformWritesSummary) {
  const auto out = dir_ / "u.csv";
  const auto r = run_cli("experiment --experiment uniform --n 2 --m_grid 50,100 --inputs 4 --out " + out.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(parse_csv(slurp(out)).size(), 8U);
  EXPECT_EQ(slurp(dir_ / "u.csv.summary.csv").rfind("m,inputs,max_error,median_error,delta_bound,D\n", 0), 0U);
}

TEST_F(CliTest, NoiseRuns) {
  const auto out = dir_ / "n.csv";
  const auto r = run_cli("experiment --experiment noise --n 2 --m_grid 200 --trials 3 --tau 0.05 --flip_mode greedy --out " +
                         out.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(parse_csv(slurp(out)).size(), 3U);
  EXPECT_EQ(slurp(dir_ / "n.csv.noise.csv").rfind("trial,m,clean_error,noisy_error", 0), 0U);
}

TEST_F(CliTest, ThreadsDoNotChangeOutput) {
  const std::string args = "experiment --experiment pointwise --field complex --n 2 --m_grid 30 --trials 4 --seed 3";
  EXPECT_EQ(run_cli(args + " --threads 1").out, run_cli(args + " --threads 4").out);
}

TEST_F(CliTest, DiagnosticsPass) {
  const auto r = run_cli("diagnostics --field complex --n 2 --seed 5");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS beta_law"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run_cli("--help").status, 0); }

}  // namespace
}  // namespace bitretrieve
