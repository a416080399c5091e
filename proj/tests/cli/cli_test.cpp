// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "bellsim/app/config.hpp"
#include "bellsim/app/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bellsim::app;

namespace {

struct Run {
  int code;
  std::string output;  // stdout and stderr together
};

Run run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" BELLSIM_CLI "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(BELLSIM_SOURCE_DIR) + "/tests/fixtures/" + name; }
std::string shipped(const std::string& name) { return std::string(BELLSIM_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("bellsim_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report_of(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

/// Every file of two output directories, compared byte for byte.
void expect_same_outputs(const fs::path& a, const fs::path& b) {
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.insert(e.path().filename().string());
  std::set<std::string> other;
  for (const auto& e : fs::directory_iterator(b)) other.insert(e.path().filename().string());
  ASSERT_EQ(names, other);
  for (const auto& n : names) EXPECT_EQ(slurp(a / n), slurp(b / n)) << n;
}

}  // namespace

TEST(CliUsage, ZeroRowsIsAUsageError) {
  const auto r = run_cli("--config '" + fixture("spreadsheet_zero_rows.json") + "' --out " + scratch("zero").string());
  EXPECT_EQ(r.code, 2) << r.output;
  EXPECT_NE(r.output.find("/params/rows"), std::string::npos) << r.output;
}

TEST(CliUsage, UnknownKeyNamesItsPath) {
  const auto r = run_cli("--config '" + fixture("collision_unknown_key.json") + "' --out " + scratch("key").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("'/params/bogus'"), std::string::npos) << r.output;
}

TEST(CliUsage, MissingSeedAndBadFlags) {
  EXPECT_EQ(run_cli("--scenario quantum").code, 2);
  EXPECT_EQ(run_cli("--scenario nonsense --seed 1").code, 2);
  EXPECT_EQ(run_cli("--scenario quantum --seed minus-one").code, 2);
  EXPECT_EQ(run_cli("--scenario quantum --seed 1 --threads 0").code, 2);
  EXPECT_EQ(run_cli("--config /nonexistent/config.json --seed 1").code, 2);
}

TEST(CliUsage, EnvironmentMirrorsFlags) {
  const auto dir = scratch("env");
  const auto r = run_cli("", "BELLSIM_SCENARIO=quantum BELLSIM_SEED=5 BELLSIM_OUT='" + dir.string() + "'");
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(report_of(dir)["config"]["seed"], 5);
  // A flag beats the environment.
  const auto dir2 = scratch("env2");
  ASSERT_EQ(run_cli("--seed 6 --out '" + dir2.string() + "'", "BELLSIM_SCENARIO=quantum BELLSIM_SEED=5").code, 0);
  EXPECT_EQ(report_of(dir2)["config"]["seed"], 6);
}

TEST(CliScenario, QuantumTsirelsonSettingsGiveTwoRootTwo) {
  const auto dir = scratch("quantum");
  const auto r = run_cli("--config '" + shipped("quantum.json") + "' --out '" + dir.string() + "'");
  ASSERT_EQ(r.code, 0) << r.output;
  const auto rep = report_of(dir);
  EXPECT_NEAR(rep["results"]["singlet"]["s_abs"].get<double>(), 2 * std::sqrt(2.0), 1e-10);
  EXPECT_TRUE(rep["passed"].get<bool>());
  EXPECT_TRUE(fs::exists(dir / "smeared.csv"));
}

TEST(CliScenario, CollisionVerdicts) {
  const auto dir = scratch("collision");
  const auto r = run_cli("--config '" + shipped("collision.json") + "' --out '" + dir.string() + "'");
  ASSERT_EQ(r.code, 0) << r.output;
  const auto res = report_of(dir)["results"];
  EXPECT_EQ(res["three_variable_inequality"]["verdict"], "violated");
  EXPECT_EQ(res["three_variable_inequality"]["estimated"]["plus"], "violated");
  EXPECT_EQ(res["three_variable_inequality"]["estimated"]["minus"], "violated");
  EXPECT_EQ(res["four_variable_chsh"]["verdict"], "satisfied");
  EXPECT_EQ(res["four_variable_chsh"]["s"]["exact"], "2");
  EXPECT_EQ(res["table"].size(), 4u);
}

TEST(CliScenario, EveryShippedConfigPasses) {
  for (const char* name : {"spreadsheet.json", "chvm.json", "gill.json", "end_to_end.json"}) {
    const auto dir = scratch(std::string("shipped_") + name);
    const auto r = run_cli("--config '" + shipped(name) + "' --out '" + dir.string() + "' --threads 4");
    EXPECT_EQ(r.code, 0) << name << "\n" << r.output;
    EXPECT_TRUE(report_of(dir)["failures"].empty()) << name;
  }
}

TEST(CliDeterminism, SameSeedSameBytesAnyThreadCount) {
  for (const char* name : {"collision.json", "chvm.json", "spreadsheet.json"}) {
    const auto a = scratch(std::string("det_a_") + name), b = scratch(std::string("det_b_") + name),
               c = scratch(std::string("det_c_") + name);
    const std::string cfg = "--config '" + shipped(name) + "'";
    ASSERT_EQ(run_cli(cfg + " --threads 1 --out '" + a.string() + "'").code, 0);
    ASSERT_EQ(run_cli(cfg + " --threads 1 --out '" + b.string() + "'").code, 0);
    ASSERT_EQ(run_cli(cfg + " --threads 6 --out '" + c.string() + "'").code, 0);
    expect_same_outputs(a, b);
    expect_same_outputs(a, c);
  }
}

TEST(CliDeterminism, DifferentSeedsDiffer) {
  const auto a = scratch("seed_a"), b = scratch("seed_b");
  ASSERT_EQ(run_cli("--scenario collision --seed 1 --out '" + a.string() + "'").code, 0);
  ASSERT_EQ(run_cli("--scenario collision --seed 2 --out '" + b.string() + "'").code, 0);
  EXPECT_NE(slurp(a / "report.json"), slurp(b / "report.json"));
}

TEST(CliReproduce, DefaultRunPassesAndRepeats) {
  const auto a = scratch("repro_a"), b = scratch("repro_b");
  const auto r = run_cli("--config '" + shipped("reproduce.json") + "' --out '" + a.string() + "'");
  ASSERT_EQ(r.code, 0) << r.output;
  ASSERT_EQ(run_cli("--config '" + shipped("reproduce.json") + "' --out '" + b.string() + "' --threads 3").code, 0);
  expect_same_outputs(a, b);
  const auto rows = report_of(a)["results"]["rows"];
  EXPECT_GE(rows.size(), 40u);
  for (const auto& row : rows) EXPECT_TRUE(row["pass"].get<bool>()) << row.dump();
}

TEST(CliReproduce, CorruptedSingletSignFailsExactlyTheSingletRows) {
  const auto dir = scratch("fault");
  const auto r = run_cli("--config '" + fixture("reproduce_singlet_sign.json") + "' --out '" + dir.string() + "'");
  EXPECT_EQ(r.code, 3) << r.output;
  const auto rep = report_of(dir);
  std::set<std::string> failed, singlet;
  for (const auto& row : rep["results"]["rows"]) {
    if (!row["pass"].get<bool>()) failed.insert(row["id"]);
    if (row["category"] == "singlet") singlet.insert(row["id"]);
  }
  EXPECT_FALSE(singlet.empty());
  EXPECT_EQ(failed, singlet);
  EXPECT_EQ(rep["failures"].size(), singlet.size());
}

TEST(Config, OverridesTakePrecedenceOverTheFile) {
  const json file = {{"scenario", "gill"}, {"seed", 3}, {"threads", 2}, {"params", {{"rows", 50}}}};
  const auto c = make_config(file, {std::nullopt, 9, std::string("elsewhere"), 5});
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.threads, 5u);
  EXPECT_EQ(c.out, "elsewhere");
  EXPECT_EQ(c.params["rows"], 50);
  EXPECT_EQ(c.params["replications"], 10000);
}

TEST(Config, TypeAndRangeErrorsCarryPointers) {
  auto message = [](const json& file) {
    try {
      make_config(file, {});
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message({{"scenario", "chvm"}, {"seed", 1}, {"params", {{"fit", {{"k", "four"}}}}}}).find("/params/fit/k"),
            std::string::npos);
  EXPECT_NE(message({{"scenario", "quantum"}, {"seed", 1}, {"params", {{"epsilons", {0.1, 3.0}}}}}).find("/params/epsilons/1"),
            std::string::npos);
  EXPECT_NE(message({{"scenario", "quantum"}, {"seed", 1}, {"extra", 1}}).find("'/extra'"), std::string::npos);
  EXPECT_NE(message({{"scenario", "gill"}, {"seed", 1}, {"params", {{"exhaustive_rows", 12}}}}).find("/params/exhaustive_rows"),
            std::string::npos);
  EXPECT_NE(message({{"scenario", "quantum"}}).find("no seed"), std::string::npos);
}

TEST(Config, RelativeDataPathsFollowTheConfigFile) {
  const json file = {{"scenario", "chvm"}, {"seed", 1}, {"params", {{"model", "models/m.json"}}}};
  EXPECT_EQ(make_config(file, {}, "configs").params["model"], "configs/models/m.json");
  EXPECT_EQ(make_config(file, {}).params["model"], "models/m.json");
}

TEST(CliScenario, AxesAreNormalizedWithAWarningOrRejected) {
  const auto near = scratch("axis_near"), far = scratch("axis_far");
  const auto write = [](const fs::path& dir, const std::string& b) {
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << json{{"scenario", "quantum"}, {"seed", 1},
                                          {"params", {{"a", "0,0,1"}, {"ap", "1,0,0"}, {"b", b}}}}.dump();
    return (dir / "c.json").string();
  };
  const auto ok = run_cli("--config '" + write(near, "1.0000001,0,0") + "' --out '" + (near / "o").string() + "'");
  ASSERT_EQ(ok.code, 0) << ok.output;
  EXPECT_EQ(report_of(near / "o")["results"]["warnings"].size(), 1u);
  const auto bad = run_cli("--config '" + write(far, "1.1,0,0") + "' --out '" + (far / "o").string() + "'");
  EXPECT_EQ(bad.code, 2) << bad.output;
  EXPECT_NE(bad.output.find("/params/b"), std::string::npos) << bad.output;
}
