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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "bellsim/app/config.hpp"
#include "bellsim/app/scenarios.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kUsage = 2, kFailed = 3 };

std::string join_names() {
  std::string s;
  for (const auto& n : bellsim::app::scenario_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Runs CHSH inequality scenarios and writes a JSON report plus CSV data files."};
  std::string config_path;
  std::optional<std::string> scenario, out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  cli.add_option("--config", config_path, "JSON config file")->envname("BELLSIM_CONFIG");
  cli.add_option("--scenario", scenario, "One of: " + join_names())->envname("BELLSIM_SCENARIO");
  cli.add_option("--seed", seed, "Master seed (required here or in the config)")->envname("BELLSIM_SEED");
  cli.add_option("--out", out, "Output directory (default: out)")->envname("BELLSIM_OUT");
  cli.add_option("--threads", threads, "Worker threads; results do not depend on it")->envname("BELLSIM_THREADS");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    std::optional<nlohmann::json> file;
    std::string base_dir;
    if (!config_path.empty()) {
      file = bellsim::app::load_json_file(config_path);
      base_dir = std::filesystem::path(config_path).parent_path().string();
      if (base_dir.empty()) base_dir = ".";
    }
    const auto config = bellsim::app::make_config(file, {scenario, seed, out, threads}, base_dir);
    const auto report = bellsim::app::run(config);

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t failed = 0;
    for (const auto& c : report.checks()) {
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << '\n';
      failed += c.passed ? 0 : 1;
    }
    std::cout << config.scenario << ": " << report.checks().size() - failed << "/" << report.checks().size()
              << " checks passed; report in " << config.out << "/report.json\n";
    std::fprintf(stderr, "wall time %.3f s\n", elapsed);
    return failed == 0 ? kOk : kFailed;
  } catch (const bellsim::app::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const bellsim::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
