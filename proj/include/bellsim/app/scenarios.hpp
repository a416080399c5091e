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

#include <string>
#include <vector>

#include "bellsim/app/config.hpp"
#include "bellsim/app/report.hpp"

namespace bellsim::app {

void run_spreadsheet(const ScenarioConfig& config, Report& report);
void run_quantum(const ScenarioConfig& config, Report& report);
void run_chvm(const ScenarioConfig& config, Report& report);
void run_collision(const ScenarioConfig& config, Report& report);
void run_gill(const ScenarioConfig& config, Report& report);
void run_end_to_end(const ScenarioConfig& config, Report& report);
void run_reproduce(const ScenarioConfig& config, Report& report);

/// One line of the consolidated table: a published value next to the value
/// the modules compute for it.
struct ReproduceRow {
  std::string id;
  std::string category;  // "singlet" rows are the ones built on E = -a.b
  std::string quantity;
  std::string relation;  // "==", "<=", ">=", ">"
  std::string reference;  // as published, e.g. "2 sqrt 2"
  double reference_value = 0;
  double computed = 0;
  std::string computed_exact;  // "p/q" when the module result is rational
  double tolerance = 0;
  bool pass = false;
};

std::vector<ReproduceRow> reproduce_rows(const ScenarioConfig& config);

/// Dispatches on config.scenario, then writes report.json. The returned
/// report says whether every asserted invariant held.
Report run(const ScenarioConfig& config);

}  // namespace bellsim::app
