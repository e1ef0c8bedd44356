#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"

namespace tourney::cli {
namespace {

namespace fs = std::filesystem;
const fs::path kConfigs = TOURNEY_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("tourney_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr,
           std::string* err_text = nullptr) {
  args.insert(args.begin(), "tourney");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::stringstream out;
  std::stringstream err;
  const int code =
      run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

TEST(Cli, RunMixedScenario) {
  const auto dir = scratch("run");
  std::string out;
  ASSERT_EQ(invoke({"run", "--config", (kConfigs / "mg_then_ipd.json").string(),
                    "--out", dir.string()},
                   &out),
            kExitOk);
  const auto records = read_file(dir / "records.csv");
  EXPECT_EQ(line_count(records), 1u + 100 * 9 + 100 * 2);
  EXPECT_TRUE(fs::exists(dir / "trace.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_NE(out.find("seed 2018"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, SeedOverrideIsDeterministic) {
  const auto a = scratch("seed_a");
  const auto b = scratch("seed_b");
  const auto config = (kConfigs / "mixed_bestplay.json").string();
  ASSERT_EQ(invoke({"run", "--config", config, "--seed", "7", "--out", a.string()}),
            kExitOk);
  ASSERT_EQ(invoke({"run", "--config", config, "--seed", "7", "--out", b.string()}),
            kExitOk);
  EXPECT_EQ(read_file(a / "records.csv"), read_file(b / "records.csv"));
  const auto first = read_file(a / "trace.jsonl");
  EXPECT_NE(first.find("\"seed_source\":\"cli\""), std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, EvenMinorityGameFailsValidation) {
  std::string err;
  EXPECT_EQ(invoke({"run", "--config", (kConfigs / "invalid/mg_even.json").string()},
                   nullptr, &err),
            kExitInvalid);
  EXPECT_NE(err.find("odd"), std::string::npos);
}

TEST(Cli, Validate) {
  std::string out;
  EXPECT_EQ(invoke({"validate", "--config", (kConfigs / "tft_vs_tft.json").string()},
                   &out),
            kExitOk);
  EXPECT_EQ(out, "OK\n");

  const auto dir = scratch("validate");
  std::ofstream(dir / "two.json") << R"({"specVersion": 1, "seed": 1,
    "agents": [{"count": 4, "strategy": "Random"}],
    "games": [{"type": "MG", "rounds": 1},
              {"type": "IPD", "rounds": 1,
               "players": {"mode": "fixed-list", "ids": ["a1", "a2"]},
               "params": {"T": 10, "R": 3, "P": 1, "S": 0}}]})";
  std::string err;
  EXPECT_EQ(invoke({"validate", "--config", (dir / "two.json").string()}, nullptr,
                   &err),
            kExitInvalid);
  EXPECT_EQ(line_count(err), 2u) << err;

  std::ofstream(dir / "broken.json") << "{\n  \"seed\": [1,\n}";
  EXPECT_EQ(invoke({"validate", "--config", (dir / "broken.json").string()}, nullptr,
                   &err),
            kExitInvalid);
  EXPECT_NE(err.find("line 3, column"), std::string::npos) << err;
  fs::remove_all(dir);
}

TEST(Cli, List) {
  std::string out;
  EXPECT_EQ(invoke({"list"}, &out), kExitOk);
  for (const char* word : {"IPD", "MG", "LPGG", "Random", "FixedChoice",
                           "TitForTat", "BestPlay", "StrategyBag", "memory",
                           "pool"}) {
    EXPECT_NE(out.find(word), std::string::npos) << word;
  }
  std::string again;
  invoke({"list"}, &again);
  EXPECT_EQ(again, out);
}

TEST(Cli, SummaryReportsVolatility) {
  const auto dir = scratch("volatility");
  ASSERT_EQ(invoke({"run", "--config", (kConfigs / "mg_then_ipd.json").string(),
                    "--out", dir.string()}),
            kExitOk);
  std::string out;
  EXPECT_EQ(invoke({"summary", "--in", (dir / "records.csv").string()}, &out),
            kExitOk);
  EXPECT_NE(out.find("volatility"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, Summary) {
  const auto dir = scratch("summary");
  ASSERT_EQ(invoke({"run", "--config", (kConfigs / "tft_vs_tft.json").string(),
                    "--out", dir.string()}),
            kExitOk);
  std::string out;
  EXPECT_EQ(invoke({"summary", "--in", (dir / "records.csv").string()}, &out),
            kExitOk);
  EXPECT_NE(out.find("300"), std::string::npos);

  auto text = read_file(dir / "records.csv");
  text.resize(text.size() - 4);
  std::ofstream(dir / "cut.csv", std::ios::binary) << text;
  std::string err;
  EXPECT_EQ(invoke({"summary", "--in", (dir / "cut.csv").string()}, nullptr, &err),
            kExitInvalid);
  EXPECT_NE(err.find("last good line"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}), kExitInvalid);
  EXPECT_EQ(invoke({"run"}), kExitInvalid);
  EXPECT_EQ(invoke({"frobnicate"}), kExitInvalid);
  EXPECT_EQ(invoke({"--help"}), kExitOk);
}

TEST(Cli, UnwritableOutputIsRuntimeError) {
  const auto dir = scratch("blocked");
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(invoke({"run", "--config", (kConfigs / "tft_vs_tft.json").string(),
                    "--out", (dir / "file" / "sub").string()}),
            kExitRuntime);
  fs::remove_all(dir);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = TOURNEY_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("list"), kExitOk);
  EXPECT_EQ(status("validate --config " + (kConfigs / "invalid/lpgg_bad_mpcr.json").string()),
            kExitInvalid);
}

}  // namespace
}  // namespace tourney::cli
