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

#include "bellsim/app/scenarios.hpp"

#include <map>

namespace bellsim::app {

Report run(const ScenarioConfig& config) {
  using Runner = void (*)(const ScenarioConfig&, Report&);
  static const std::map<std::string, Runner> runners = {
      {"spreadsheet", run_spreadsheet}, {"quantum", run_quantum},       {"chvm", run_chvm},
      {"collision", run_collision},     {"gill", run_gill},             {"end-to-end", run_end_to_end},
      {"reproduce", run_reproduce}};
  const auto it = runners.find(config.scenario);
  if (it == runners.end()) throw UsageError("config: '/scenario' unknown scenario '" + config.scenario + "'");
  Report report(config, config.out);
  it->second(config, report);
  report.save();
  return report;
}

}  // namespace bellsim::app
