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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsim/common/error.hpp"

namespace bellsim::app {

/// Bad configuration or command line. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"spreadsheet", "quantum", "chvm",      "collision",
                                                 "gill",        "end-to-end", "reproduce"};
  return names;
}

/// Default parameters of a scenario. Every accepted key appears here; a
/// null default accepts a string.
nlohmann::json default_params(const std::string& scenario);

struct ScenarioConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out = "out";
  nlohmann::json params;  // defaults merged with the file's "params"
};

/// Values that may override a config file (command line or environment).
struct Overrides {
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

/// File layout: {"scenario", "seed", "threads"?, "out"?, "params"?}.
/// Unknown keys, wrong types and out-of-range values raise UsageError with
/// the JSON pointer of the offending key. A seed must come from the file or
/// the overrides.
/// Relative file paths inside "params" (model, input_csv) are taken relative
/// to `base_dir`, normally the config file's directory.
ScenarioConfig make_config(const std::optional<nlohmann::json>& file, const Overrides& overrides,
                           const std::string& base_dir = "");

nlohmann::json load_json_file(const std::string& path);

}  // namespace bellsim::app
