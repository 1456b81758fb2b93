#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wfis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::vector<std::string> lines(const std::string& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(wfis_cli::run({}), wfis_cli::kUsageError);
  EXPECT_EQ(wfis_cli::run({"exact-table", "--max-n", "3", "--bogus"}), wfis_cli::kUsageError);
  EXPECT_EQ(wfis_cli::run({"no-such-command"}), wfis_cli::kUsageError);
  EXPECT_EQ(wfis_cli::run({"exact-table"}), wfis_cli::kUsageError);
  EXPECT_EQ(wfis_cli::run({"converge", "--y0", "0.2", "--s", "0.5"}), wfis_cli::kUsageError);
  EXPECT_EQ(wfis_cli::run({"limit-eval", "--x", "0.5", "--y", "0", "--z", "0.2", "--out",
                           path("bad.txt")}),
            wfis_cli::kUsageError);
}

TEST_F(CliTest, ExactTableAndManifest) {
  const std::string out = path("q.csv");
  ASSERT_EQ(wfis_cli::run({"exact-table", "--max-n", "4", "--out", out}), wfis_cli::kSuccess);
  const auto rows = lines(out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], "w,b,f,value");
  EXPECT_EQ(rows.size(), 1u + 35u);
  bool found = false;
  for (const auto& r : rows) {
    if (r.rfind("1,1,2,", 0) == 0) {
      EXPECT_NEAR(std::stod(r.substr(6)), 7.0 / 18.0, 1e-16);
      found = true;
    }
  }
  EXPECT_TRUE(found);

  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  EXPECT_EQ(manifest.at("subcommand"), "exact-table");
  EXPECT_EQ(manifest.at("params").at("max-n"), "4");
  EXPECT_TRUE(manifest.contains("timestamp"));
  EXPECT_TRUE(manifest.contains("version"));
  EXPECT_TRUE(manifest.contains("seed"));
}

TEST_F(CliTest, ReplayReproducesOutput) {
  const std::string out = path("chain.csv");
  ASSERT_EQ(wfis_cli::run({"chain-sim", "--n", "40", "--gens", "25", "--reps", "3", "--beta",
                           "1.5", "--seed", "77", "--out", out}),
            wfis_cli::kSuccess);
  const std::string again = path("again.csv");
  ASSERT_EQ(wfis_cli::run({"replay", "--manifest", out + ".manifest.json", "--out", again}),
            wfis_cli::kSuccess);
  EXPECT_EQ(slurp(out), slurp(again));
  EXPECT_EQ(lines(out).size(), 1u + 3u * 26u);
}

TEST_F(CliTest, SeedChangesOutput) {
  const std::string a = path("a.csv");
  const std::string b = path("b.csv");
  ASSERT_EQ(wfis_cli::run({"season-sim", "--w", "5", "--b", "5", "--f", "5", "--reps", "50",
                           "--seed", "1", "--out", a}),
            wfis_cli::kSuccess);
  ASSERT_EQ(wfis_cli::run({"season-sim", "--w", "5", "--b", "5", "--f", "5", "--reps", "50",
                           "--seed", "2", "--out", b}),
            wfis_cli::kSuccess);
  EXPECT_NE(slurp(a), slurp(b));
}

TEST_F(CliTest, CoupledSeasonPasses) {
  EXPECT_EQ(wfis_cli::run({"season-sim", "--w", "4", "--b", "3", "--f", "5", "--reps", "2000",
                           "--coupled", "--out", path("c.csv")}),
            wfis_cli::kSuccess);
}

TEST_F(CliTest, LimitEvalJson) {
  const std::string out = path("limit.json");
  ASSERT_EQ(wfis_cli::run({"limit-eval", "--x", "0", "--y", "0.5", "--z", "0.25", "--json",
                           "--out", out}),
            wfis_cli::kSuccess);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_NEAR(j.at("T").get<double>(), 0.5, 1e-14);
}

TEST_F(CliTest, ConvergeVerdictDrivesExitCode) {
  EXPECT_EQ(wfis_cli::run({"converge", "--target", "q_vs_u", "--ns", "10,20,40", "--slope-min",
                           "-3", "--slope-max", "0", "--out", path("ok.csv")}),
            wfis_cli::kSuccess);
  EXPECT_EQ(wfis_cli::run({"converge", "--target", "q_vs_u", "--ns", "10,20,40", "--slope-min",
                           "1", "--slope-max", "2", "--out", path("fail.csv")}),
            wfis_cli::kValidationFail);
  EXPECT_EQ(wfis_cli::run({"converge", "--target", "nope", "--ns", "10,20"}),
            wfis_cli::kUsageError);
}

TEST_F(CliTest, OtherSubcommandsRun) {
  EXPECT_EQ(wfis_cli::run({"vs-curve", "--s", "0.5", "--points", "11", "--out", path("vs.csv")}),
            wfis_cli::kSuccess);
  EXPECT_EQ(lines(path("vs.csv")).size(), 12u);
  EXPECT_EQ(wfis_cli::run({"diffusion-sim", "--t-end", "0.05", "--reps", "2", "--stride", "10",
                           "--out", path("sde.csv")}),
            wfis_cli::kSuccess);
  EXPECT_EQ(wfis_cli::run({"compare", "--n", "50", "--t", "0.1", "--reps", "200", "--out",
                           path("cmp.csv")}),
            wfis_cli::kSuccess);
  EXPECT_EQ(wfis_cli::run({"moments", "--ns", "20,40", "--xs", "0.5", "--reps", "500", "--out",
                           path("mom.csv")}),
            wfis_cli::kSuccess);
}
