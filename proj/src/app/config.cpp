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

#include "bellsim/app/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace bellsim::app {

using nlohmann::json;

namespace {

json defaults_for(const std::string& scenario) {
  if (scenario == "spreadsheet") {
    return {{"rows", 1000},
            {"input_csv", nullptr},
            {"random_sheets", 1000},
            {"triple_rows", 1000},
            {"sample_size", 100},
            {"replications", 1000},
            {"predicate_window", 0.2}};
  }
  if (scenario == "quantum") {
    return {{"a", "tsirelson"},
            {"ap", "tsirelson"},
            {"b", "1,0,0"},
            {"bp", "0,1,0"},
            {"random_pairs", 1000},
            {"random_quadruples", 1000},
            {"separable_mixtures", 1000},
            {"epsilons", {0.4, 0.2, 0.1, 0.05}}};
  }
  if (scenario == "chvm") {
    return {{"model", nullptr},
            {"trials", 1000000},
            {"schedule", "random"},
            {"write_events", false},
            {"random_models", 1000},
            {"subdomain_models", 200},
            {"fit", {{"enabled", true}, {"targets", "singlet"}, {"k", 4}, {"m", 2}, {"budget", 400000}, {"restarts", 16}}}};
  }
  if (scenario == "collision") {
    return {{"trials", 1000000}, {"schedule", "random"}, {"write_trial_log", false}, {"invisible_rows", 100000}};
  }
  if (scenario == "gill") {
    return {{"rows", 1000}, {"replications", 10000}, {"exhaustive_rows", 4}, {"exhaustive_replications", 100000},
            {"histogram_bins", 40}, {"sheet", "uniform"}};
  }
  if (scenario == "end-to-end") {
    return {{"invisible_rows", 100000}, {"sample_size", 10000}, {"seeds", 20}, {"predicate_window", 0.2},
            {"model_trials", 1000000}};
  }
  if (scenario == "reproduce") {
    return {{"fault_injection", nullptr}};
  }
  throw UsageError("unknown scenario '" + scenario + "'");
}

bool type_matches(const json& expected, const json& given) {
  if (expected.is_null()) return given.is_string() || given.is_null();
  if (expected.is_boolean()) return given.is_boolean();
  if (expected.is_number_integer()) return given.is_number_integer();
  if (expected.is_number()) return given.is_number();
  if (expected.is_string()) return given.is_string();
  if (expected.is_array()) return given.is_array();
  if (expected.is_object()) return given.is_object();
  return false;
}

const char* type_name(const json& expected) {
  if (expected.is_null()) return "a string";
  if (expected.is_boolean()) return "a boolean";
  if (expected.is_number_integer()) return "an integer";
  if (expected.is_number()) return "a number";
  if (expected.is_string()) return "a string";
  if (expected.is_array()) return "an array";
  return "an object";
}

void merge_checked(json& target, const json& given, const std::string& path) {
  for (const auto& [key, value] : given.items()) {
    const std::string here = path + "/" + key;
    if (!target.contains(key)) throw UsageError("config: unknown key '" + here + "'");
    json& slot = target[key];
    if (!type_matches(slot, value)) throw UsageError("config: '" + here + "' must be " + type_name(slot));
    if (slot.is_object()) {
      merge_checked(slot, value, here);
    } else {
      slot = value;
    }
  }
}

bool non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw UsageError("config: '" + path + "' " + what);
}

void validate_ranges(const std::string& scenario, const json& p) {
  auto positive = [&](const char* key) {
    require(p.at(key).get<std::int64_t>() >= 1, std::string("/params/") + key, "must be at least 1");
  };
  auto window = [&](const char* key) {
    const double w = p.at(key).get<double>();
    require(w >= 0 && w < 1, std::string("/params/") + key, "must lie in [0, 1)");
  };
  auto schedule = [&] {
    const std::string s = p.at("schedule");
    require(s == "random" || s == "systematic", "/params/schedule", "must be \"random\" or \"systematic\"");
  };
  if (scenario == "spreadsheet") {
    for (const char* k : {"rows", "random_sheets", "triple_rows", "sample_size", "replications"}) positive(k);
    require(p["sample_size"].get<std::int64_t>() <= p["rows"].get<std::int64_t>() || !p["input_csv"].is_null(),
            "/params/sample_size", "must not exceed /params/rows");
    window("predicate_window");
  } else if (scenario == "quantum") {
    for (const char* k : {"random_pairs", "random_quadruples", "separable_mixtures"}) positive(k);
    for (std::size_t i = 0; i < p["epsilons"].size(); ++i) {
      const json& e = p["epsilons"][i];
      require(e.is_number() && e.get<double>() > 0 && e.get<double>() <= 2, "/params/epsilons/" + std::to_string(i),
              "must be a number in (0, 2]");
    }
  } else if (scenario == "chvm") {
    positive("random_models");
    positive("subdomain_models");
    require(p["trials"].get<std::int64_t>() >= 0, "/params/trials", "must be non-negative");
    schedule();
    const json& f = p["fit"];
    for (const char* k : {"k", "m", "budget", "restarts"}) {
      require(f.at(k).get<std::int64_t>() >= 1, std::string("/params/fit/") + k, "must be at least 1");
    }
    require(f["targets"].is_string() && (f["targets"] == "singlet" || f["targets"] == "zero"), "/params/fit/targets",
            "must be \"singlet\" or \"zero\"");
  } else if (scenario == "collision") {
    positive("trials");
    require(p["trials"].get<std::int64_t>() >= 4, "/params/trials", "must be at least 4");
    positive("invisible_rows");
    schedule();
  } else if (scenario == "gill") {
    require(p["sheet"] == "extremal" || p["sheet"] == "uniform", "/params/sheet", "must be \"extremal\" or \"uniform\"");
    for (const char* k : {"rows", "replications", "exhaustive_replications", "histogram_bins"}) positive(k);
    const auto n = p["exhaustive_rows"].get<std::int64_t>();
    require(n >= 1 && n <= 8, "/params/exhaustive_rows", "must lie in [1, 8]");
  } else if (scenario == "end-to-end") {
    for (const char* k : {"invisible_rows", "sample_size", "seeds", "model_trials"}) positive(k);
    require(p["sample_size"].get<std::int64_t>() <= p["invisible_rows"].get<std::int64_t>(), "/params/sample_size",
            "must not exceed /params/invisible_rows");
    window("predicate_window");
  } else if (scenario == "reproduce") {
    require(p["fault_injection"].is_null() || p["fault_injection"] == "singlet_sign", "/params/fault_injection",
            "must be null or \"singlet_sign\"");
  }
}

}  // namespace

json default_params(const std::string& scenario) { return defaults_for(scenario); }

ScenarioConfig make_config(const std::optional<json>& file, const Overrides& overrides, const std::string& base_dir) {
  ScenarioConfig c;
  std::optional<std::string> scenario = overrides.scenario;
  std::optional<std::uint64_t> seed = overrides.seed;
  json params = json::object();
  if (file) {
    if (!file->is_object()) throw UsageError("config: top level must be a JSON object");
    for (const auto& [key, value] : file->items()) {
      if (key == "scenario") {
        require(value.is_string(), "/scenario", "must be a string");
        if (!scenario) scenario = value.get<std::string>();
      } else if (key == "seed") {
        require(non_negative_integer(value), "/seed", "must be a non-negative integer");
        if (!seed) seed = value.get<std::uint64_t>();
      } else if (key == "threads") {
        require(non_negative_integer(value) && value.get<std::uint64_t>() >= 1, "/threads", "must be a positive integer");
        c.threads = value.get<unsigned>();
      } else if (key == "out") {
        require(value.is_string(), "/out", "must be a string");
        c.out = value.get<std::string>();
      } else if (key == "params") {
        require(value.is_object(), "/params", "must be an object");
        params = value;
      } else {
        throw UsageError("config: unknown key '/" + key + "'");
      }
    }
  }
  if (!scenario) throw UsageError("no scenario given (use --scenario or a config file)");
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), *scenario) == names.end()) {
    throw UsageError("unknown scenario '" + *scenario + "'");
  }
  if (!seed) throw UsageError("no seed given (use --seed, BELLSIM_SEED or \"seed\" in the config)");
  c.scenario = *scenario;
  c.seed = *seed;
  if (overrides.out) c.out = *overrides.out;
  if (overrides.threads) c.threads = *overrides.threads;
  if (c.threads == 0) throw UsageError("threads must be at least 1");
  c.params = defaults_for(c.scenario);
  merge_checked(c.params, params, "/params");
  validate_ranges(c.scenario, c.params);
  if (!base_dir.empty()) {
    for (const char* key : {"model", "input_csv"}) {
      if (!c.params.contains(key) || !c.params[key].is_string()) continue;
      const std::filesystem::path path = c.params[key].get<std::string>();
      if (path.is_relative()) c.params[key] = (std::filesystem::path(base_dir) / path).lexically_normal().string();
    }
  }
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace bellsim::app
