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

#include "bellsim/app/report.hpp"

#include <fstream>

namespace bellsim::app {

using nlohmann::json;

Report::Report(const ScenarioConfig& config, std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {
  // The output directory and thread count are left out so that reports can
  // be compared byte for byte across both.
  echo_ = {{"scenario", config.scenario}, {"seed", config.seed}, {"params", config.params}};
}

bool Report::check(std::string name, bool passed, std::string detail) {
  checks_.push_back({std::move(name), passed, std::move(detail)});
  return passed;
}

bool Report::passed() const {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

void Report::write_file(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(out_dir_);
  std::ofstream out(out_dir_ / name, std::ios::binary);
  if (!out) throw Error("cannot write '" + (out_dir_ / name).string() + "'");
  out << content;
  files_.push_back(name);
}

json Report::to_json() const {
  json checks = json::array();
  json failures = json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    if (!c.passed) failures.push_back(c.name);
  }
  return {{"artifact", std::string("bellsim ") + BELLSIM_VERSION},
          {"config", echo_},
          {"results", results_},
          {"checks", checks},
          {"failures", failures},
          {"passed", passed()},
          {"files", files_}};
}

void Report::save() const {
  std::filesystem::create_directories(out_dir_);
  std::ofstream out(out_dir_ / "report.json", std::ios::binary);
  if (!out) throw Error("cannot write report.json in '" + out_dir_.string() + "'");
  out << to_json().dump(2) << '\n';
}

json exact_and_double(const Rational& r) { return {{"exact", to_string(r)}, {"value", to_double(r)}}; }

}  // namespace bellsim::app
