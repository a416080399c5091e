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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsim/app/config.hpp"
#include "bellsim/common/rational.hpp"

namespace bellsim::app {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

/// Everything a scenario produces. Numbers in `results` come straight from
/// module operations.
class Report {
 public:
  Report(const ScenarioConfig& config, std::filesystem::path out_dir);

  nlohmann::json& results() { return results_; }
  const std::vector<Check>& checks() const { return checks_; }

  /// Records an asserted invariant; a false value makes the run fail.
  bool check(std::string name, bool passed, std::string detail = "");
  bool passed() const;

  /// Writes a file into the output directory and lists it in the report.
  void write_file(const std::string& name, const std::string& content);

  nlohmann::json to_json() const;
  /// report.json in the output directory.
  void save() const;

 private:
  nlohmann::json echo_;
  nlohmann::json results_ = nlohmann::json::object();
  std::vector<Check> checks_;
  std::vector<std::string> files_;
  std::filesystem::path out_dir_;
};

/// {"exact": "p/q", "value": double}.
nlohmann::json exact_and_double(const Rational& r);

}  // namespace bellsim::app
