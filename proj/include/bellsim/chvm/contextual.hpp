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
#include <optional>
#include <string>
#include <vector>

#include "bellsim/common/rational.hpp"
#include "bellsim/ineq/correlation.hpp"

namespace bellsim::chvm {

/// Instrument index, matching the spreadsheet column order.
enum class Instrument : std::size_t { x = 0, xp = 1, y = 2, yp = 3 };
inline constexpr std::array<const char*, 4> kInstrumentNames = {"x", "xp", "y", "yp"};
inline constexpr std::array<const char*, 4> kObservableNames = {"A_x", "A_xp", "B_y", "B_yp"};

/// Source variables (l1, l2) in k x k with a joint distribution, and four
/// instrument variable spaces of size m, one per setting. Instrument spaces
/// are separate index families, so A_x is only ever evaluated on Lambda_x.
///
/// outcome[i] is a k x m table stored row-major: outcome[i][l * m + li] is
/// the result (-1, 0 or +1) of observable i for source variable l (l1 for
/// Alice's instruments, l2 for Bob's) and instrument variable li. 0 means no
/// detection.
struct ContextualModel {
  std::size_t k = 1;
  std::size_t m = 1;
  std::vector<Rational> source;                    // k*k, index l1 * k + l2
  std::array<std::vector<Rational>, 4> instrument;  // each of size m
  std::array<std::vector<std::int8_t>, 4> outcome;  // each of size k*m

  int at(std::size_t obs, std::size_t l, std::size_t li) const { return outcome[obs][l * m + li]; }
  /// Shapes, non-negativity, exact normalization, outcomes in {-1, 0, 1}.
  void validate() const;
  bool operator==(const ContextualModel&) const = default;
};

struct ContextualExpectations {
  ineq::ExactCorrelationSet correlations;  // pairs and singles
  /// single_by_context[obs][d]: the single for observable obs computed on
  /// the product space of the context whose distant setting is d (0 or 1).
  std::array<std::array<Rational, 2>, 4> single_by_context;
};

/// Sums over the full product space Lambda_12 x Lambda_x x Lambda_y of each
/// context. Throws InvariantError if a single depends on the distant setting.
ContextualExpectations contextual_expectations(const ContextualModel& model);

/// Instrument-averaged outcome functions on the source variables.
struct AveragedModel {
  std::size_t k = 1;
  std::vector<Rational> source;
  std::array<std::vector<Rational>, 4> mean;  // each of size k, values in [-1, 1]
};

AveragedModel bell71_average(const ContextualModel& model);

/// E(A_x B_y) = sum p(l1, l2) A_x(l1) B_y(l2) over the averaged model.
ineq::ExactCorrelationSet averaged_expectations(const AveragedModel& model);

struct PostselectedExpectations {
  ineq::ExactCorrelationSet correlations;  // pairs only
  std::array<Rational, 4> retained_mass;   // P(A != 0, B != 0) per setting pair
  /// local[pair] = {E(A | both detected), E(B | both detected)}.
  std::array<std::array<Rational, 2>, 4> local;
};

/// Conditional expectations given both outcomes are non-zero. Throws Error
/// naming the setting pair if its retained mass is 0.
PostselectedExpectations postselect_expectations(const ContextualModel& model);

/// One local observable seen from one distant setting.
struct SignallingCell {
  std::size_t distant;                    // distant instrument index
  std::optional<Rational> when_detected;  // E(local | local != 0, distant != 0)
  std::optional<Rational> when_missed;    // E(local | local != 0, distant == 0)
  Rational raw;                           // unconditioned single in this context
};

struct SignallingRow {
  std::size_t observable;
  std::array<SignallingCell, 2> cells;
  bool raw_setting_independent = true;
  /// Post-selected marginal differs between the two distant settings, or
  /// between detected and missed distant outcomes, by more than 1e-12.
  bool apparent_signalling = false;
};

struct SignallingReport {
  std::array<SignallingRow, 4> rows;
  bool any_apparent_signalling() const;
};

/// Throws InvariantError if a raw marginal depends on the distant setting.
SignallingReport apparent_signalling(const ContextualModel& model);

/// Metadata on the size of the model family.
struct ParameterCount {
  std::size_t outcome_table_cells;     // 4 k m cells, each in {-1, 0, 1}
  std::size_t probability_params;      // 4 (m - 1) + k^2 - 1 for a general joint
  std::size_t probability_params_symmetric_source;  // 4 (m - 1) + k(k - 1)/2
};
ParameterCount parameter_count(std::size_t k, std::size_t m);

/// A shipped k = 4, m = 2 model whose full-ensemble CHSH is 81/100 and whose
/// post-selected CHSH is 324/121.
ContextualModel demo_postselection_model();

}  // namespace bellsim::chvm
