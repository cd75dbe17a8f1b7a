#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "icas/cli/commands.hpp"
#include "icas/csv.hpp"
#include "icas/errors.hpp"

namespace icas::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("icas_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "icas");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

TEST(Csv, FormattingAndQuoting) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_double(std::nan("")), "nan");
  const fs::path dir = scratch("csv");
  {
    CsvWriter w(dir / "a.csv");
    w.row("x", "has,comma", "has\"quote");
    w.row(1, 2.5, std::optional<double>{});
  }
  EXPECT_EQ(slurp(dir / "a.csv"), "x,\"has,comma\",\"has\"\"quote\"\r\n1,2.5,\r\n");
  EXPECT_THROW(CsvWriter(dir / "missing" / "b.csv"), std::runtime_error);
}

TEST(Config, DefaultsResolve) {
  const RunConfig rc = resolve_config("sensitivity", nullptr, std::nullopt, std::nullopt);
  EXPECT_EQ(rc.command, "sensitivity");
  EXPECT_DOUBLE_EQ(rc.sensitivity.compare.delta1_gain, 1e-4);
  EXPECT_DOUBLE_EQ(rc.cavity.delta1, 1e-5);
  EXPECT_TRUE(rc.resolved.contains("sensitivity"));
  EXPECT_FALSE(rc.resolved.contains("threads"));
}

TEST(Config, UnknownKeyNamesPath) {
  const json doc = json::parse(R"({"ringdown": {"shotz": 3}})");
  try {
    resolve_config("ringdown", &doc, std::nullopt, std::nullopt);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("ringdown.shotz"), std::string::npos) << e.what();
  }
}

TEST(Config, SeedOverrideWins) {
  const json doc = json::parse(R"({"seed": 5})");
  EXPECT_EQ(resolve_config("bistability", &doc, std::nullopt, std::nullopt).seed, 5u);
  EXPECT_EQ(resolve_config("bistability", &doc, 9u, std::nullopt).seed, 9u);
}

TEST(Config, InactiveSectionsStillValidated) {
  const json doc = json::parse(R"({"sweep_up": {"shots": -1}})");
  EXPECT_THROW(resolve_config("bistability", &doc, std::nullopt, std::nullopt), ConfigError);
}

TEST(Cli, UnknownKeyExitsTwo) {
  const fs::path dir = scratch("unknown");
  const auto cfg = write_config(dir, R"({"bogus": 1})");
  EXPECT_EQ(run_cli({"bistability", "--config", cfg.string(), "--out", (dir / "o").string()}), 2);
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, EmptyGainGridExitsTwo) {
  const fs::path dir = scratch("empty_grid");
  const auto cfg = write_config(dir, R"({"heart_map": {"pump": []}})");
  EXPECT_EQ(run_cli({"heart-map", "--config", cfg.string(), "--out", (dir / "o").string()}), 2);
  const auto cfg2 = write_config(dir, R"({"heart_map": {"pump": {"min": 0, "max": 1, "count": 0}}})");
  EXPECT_EQ(run_cli({"heart-map", "--config", cfg2.string(), "--out", (dir / "o").string()}), 2);
}

TEST(Cli, MalformedJsonAndUsageErrorsExitTwo) {
  const fs::path dir = scratch("malformed");
  const auto cfg = write_config(dir, "{not json");
  EXPECT_EQ(run_cli({"bistability", "--config", cfg.string()}), 2);
  EXPECT_EQ(run_cli({"no-such-command"}), 2);
  EXPECT_EQ(run_cli({"bistability", "--threads", "0"}), 2);
}

TEST(Cli, DryRunComputesNothing) {
  const fs::path dir = scratch("dry");
  testing::internal::CaptureStdout();
  const int code = run_cli({"ringdown", "--dry-run", "--out", (dir / "o").string()});
  const std::string printed = testing::internal::GetCapturedStdout();
  EXPECT_EQ(code, 0);
  EXPECT_FALSE(fs::exists(dir / "o"));
  const json j = json::parse(printed);
  EXPECT_EQ(j["command"], "ringdown");
  EXPECT_TRUE(j.contains("derived"));
  EXPECT_TRUE(j["config"].contains("ringdown"));
}

TEST(Cli, BistabilityRerunIsByteIdentical) {
  const fs::path dir = scratch("bist");
  ASSERT_EQ(run_cli({"bistability", "--out", (dir / "a").string()}), 0);
  ASSERT_EQ(run_cli({"bistability", "--out", (dir / "b").string(), "--threads", "2"}), 0);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir / "b" / e.path().filename())) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 7);
}

TEST(Cli, HeartMapSmallGridDeterministicAcrossThreads) {
  const fs::path dir = scratch("heart");
  const auto cfg = write_config(dir, R"({"heart_map": {"eta0": 1e4, "pump": {"min": -3, "max": 6, "count": 10},
                                                       "drive": [0, 1, 2]}})");
  ASSERT_EQ(run_cli({"heart-map", "--config", cfg.string(), "--out", (dir / "a").string(), "--threads", "1"}), 0);
  ASSERT_EQ(run_cli({"heart-map", "--config", cfg.string(), "--out", (dir / "b").string(), "--threads", "3"}), 0);
  for (const char* f : {"heart_map.csv", "heart_map_matrix.csv", "slice_zero_drive.csv", "slice_driven.csv",
                        "summary.json", "manifest.json"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  const json s = json::parse(slurp(dir / "a" / "summary.json"));
  EXPECT_TRUE(s.is_object());
  // Matrix layout: header of drive values, first column gain.
  std::ifstream m(dir / "a" / "heart_map_matrix.csv");
  std::string header;
  std::getline(m, header);
  EXPECT_EQ(header.rfind("kappa_g,", 0), 0u);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 3);
}

TEST(Cli, ManifestDescribesRun) {
  const fs::path dir = scratch("manifest");
  ASSERT_EQ(run_cli({"bistability", "--out", dir.string(), "--seed", "77"}), 0);
  const json m = json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["command"], "bistability");
  EXPECT_EQ(m["seed"], 77u);
  EXPECT_DOUBLE_EQ(m["constants"]["speed_of_light"].get<double>(), 299792458.0);
  EXPECT_TRUE(m["config"].contains("cavity"));
  EXPECT_TRUE(m.contains("version"));
  for (const auto& f : m["files"]) EXPECT_TRUE(fs::exists(dir / f.get<std::string>())) << f;
  // Re-running from the recorded config reproduces every output.
  const fs::path again = scratch("manifest_again");
  const auto cfg = write_config(again, m["config"].dump());
  ASSERT_EQ(run_cli({"bistability", "--config", cfg.string(), "--out", (again / "o").string()}), 0);
  for (const auto& f : m["files"]) {
    EXPECT_EQ(slurp(dir / f.get<std::string>()), slurp(again / "o" / f.get<std::string>())) << f;
  }
}

TEST(Cli, SensitivityDefaultsShowCrossover) {
  const fs::path dir = scratch("sens");
  ASSERT_EQ(run_cli({"sensitivity", "--out", dir.string()}), 0);
  const json s = json::parse(slurp(dir / "summary.json"));
  ASSERT_TRUE(s["intersection_time"].is_number());
  EXPECT_LT(s["intersection_time"].get<double>(), 1.0);
  EXPECT_TRUE(s["optimum"].contains("clamp"));
  EXPECT_TRUE(fs::exists(dir / "technical_noise.csv"));

  const fs::path d0 = scratch("sens0");
  const auto cfg = write_config(d0, R"({"sensitivity": {"v_t": 0}})");
  ASSERT_EQ(run_cli({"sensitivity", "--config", cfg.string(), "--out", (d0 / "o").string()}), 0);
  const json s0 = json::parse(slurp(d0 / "o" / "summary.json"));
  EXPECT_TRUE(s0["intersection_time"].is_null());
  EXPECT_TRUE(s0["crossover"].is_null());
}

TEST(Cli, SweepUpSmallRun) {
  const fs::path dir = scratch("sweep");
  const auto cfg = write_config(dir, R"({"sweep_up": {"shots": 3}})");
  ASSERT_EQ(run_cli({"sweep-up", "--config", cfg.string(), "--out", (dir / "o").string()}), 0);
  const json s = json::parse(slurp(dir / "o" / "summary.json"));
  EXPECT_EQ(s["unanimous"], true);
}

}  // namespace
}  // namespace icas::cli
