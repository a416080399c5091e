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

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "bellsim/ineq/chsh.hpp"

namespace bellsim::ineq {

using SampleTables = std::array<PairTable, 4>;

/// keep(row, setting pair, auxiliary tag in [0, 1)) for setting-dependent
/// extraction. The tag is drawn once per row, like a detection time.
using SelectionPredicate = std::function<bool(const Row&, SettingPair, double)>;

struct SimpleRandom {};
struct SettingDependent {
  SelectionPredicate keep;
};

/// Draws M rows per setting pair without replacement (independently for
/// each pair) and returns only the two measured columns. In
/// setting-dependent mode rows are filtered by the predicate first.
SampleTables extract_samples(const Spreadsheet& sheet, std::size_t m, const SimpleRandom& mode, std::uint64_t seed);
SampleTables extract_samples(const Spreadsheet& sheet, std::size_t m, const SettingDependent& mode,
                             std::uint64_t seed);

/// Setting-dependent selection that mimics a coincidence window: a row is
/// kept when its product ab has the sign the canonical CHSH variant rewards
/// for that setting pair, or when its tag falls inside `window`. Any sheet
/// with balanced products then gives S near 4 (1 - window) / (1 + window).
SelectionPredicate coincidence_window_predicate(double window);

/// Pairwise estimates from four M x 2 tables (M may differ per table).
ExactCorrelationSet estimate_from_tables(const SampleTables& tables);

/// sqrt(sum_i (1 - E_i^2) / M_i): standard error of any sign variant of S
/// estimated from four independent tables.
double chsh_standard_error(const SampleTables& tables);

/// Stacks the tables into one sheet, each table's columns in their labelled
/// positions, and fills the remaining cells with independent fair +-1.
Spreadsheet complete_spreadsheet(const SampleTables& tables, std::uint64_t seed);

struct GillResult {
  std::vector<double> s_obs;  // one per replication, in replication order
  double pr_at_least_2 = 0;
  double pr_above_2 = 0;
  std::size_t replications = 0;
};

/// Each replication labels every row with a uniformly random setting pair,
/// estimates the four expectations from the labelled rows and forms
/// S = E(AB) + E(AB') + E(A'B) - E(A'B'). A label with no rows estimates 0.
GillResult gill_experiment(const Spreadsheet& sheet, std::size_t replications, std::uint64_t seed,
                           unsigned threads = 1);

struct GillExact {
  Rational pr_at_least_2;
  Rational pr_above_2;
};

/// Exact probabilities by enumerating all 4^N labellings (N <= 10).
GillExact gill_exact(const Spreadsheet& sheet);

}  // namespace bellsim::ineq
