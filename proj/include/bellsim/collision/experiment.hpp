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
#include <iosfwd>
#include <string_view>
#include <vector>

#include "bellsim/common/rational.hpp"
#include "bellsim/ineq/correlation.hpp"
#include "bellsim/ineq/sampling.hpp"
#include "bellsim/ineq/sign_table.hpp"

namespace bellsim::collision {

/// A 1 kg ball launched at speed v in (0, 10] hits a resting 4 kg ball head
/// on. Afterwards the heavy ball moves at V1 = 2v/5 (Alice's station) and
/// the light one at V2 = 3v/5 (Bob's station).
inline constexpr double kMaxSpeed = 10.0;

enum class Observable { A, B, C };

/// A(y) = -1 iff y <= 2, B(y) = -1 iff y <= 3, C(y) = +1 iff y <= 3.
struct ObservableDef {
  Observable name;
  int threshold;       // t in "y <= t"
  int value_at_or_below;
};
ObservableDef definition(Observable o);
int evaluate(Observable o, const Rational& y);

/// The four setting pairs the stations offer. Alice always reads V1.
enum class Setting { AB, AC, BC, BB };
inline constexpr std::array<Setting, 4> kSettings = {Setting::AB, Setting::AC, Setting::BC, Setting::BB};
std::string_view setting_name(Setting s);
Observable alice_observable(Setting s);
Observable bob_observable(Setting s);

/// Position of each setting in the CHSH arrangement
/// (A, A', B, B') = (A(V1), B(V1), B(V2), C(V2)):
/// AB -> (A, B), AC -> (A, B'), BB -> (A', B), BC -> (A', B').
ineq::SettingPair chsh_slot(Setting s);

struct CollisionTrial {
  double v;
  double v1;  // 2v/5 rounded to double, for display
  double v2;  // 3v/5 rounded to double, for display
  Setting setting;
  std::int8_t out_a;
  std::int8_t out_b;
};

/// Outcomes are decided on the exact value of v (the sign of c v - 5 t is
/// computed with a single rounding), so thresholds are never misjudged.
/// Throws Error unless 0 < v <= 10.
CollisionTrial evaluate_trial(double v, Setting setting);

/// Momentum v - (4 V1 - V2) and energy v^2 - (4 V1^2 + V2^2) in exact
/// arithmetic at the exact value of v. Both are zero.
struct ConservationCheck {
  Rational momentum_residual;
  Rational energy_residual;
  bool exact() const { return momentum_residual == 0 && energy_residual == 0; }
};
ConservationCheck conservation(const Rational& v);

/// E(AB), E(AC), E(BC), E(BB) by exact piecewise integration against the
/// uniform density of V1 on (0, 4].
struct AnalyticExpectations {
  Rational e_ab, e_ac, e_bc, e_bb;
};
AnalyticExpectations analytic_expectations();
/// E(X(V1) Y(V2)) for any pair of observables, same method.
Rational analytic_expectation(Observable alice, Observable bob);

enum class ScheduleKind { systematic, random };

struct ExperimentResult {
  std::vector<CollisionTrial> trials;
  ineq::SampleTables tables;                 // indexed by chsh_slot
  ineq::ExactCorrelationSet estimates;       // indexed by chsh_slot, with counts
  std::array<double, 4> standard_error{};    // indexed by chsh_slot
};

/// v is drawn as 10 (1 - u) with u uniform on [0, 1), so v is never 0.
/// Systematic schedules cycle AB, AC, BC, BB; random ones draw uniformly.
/// Trials are generated in seed-derived blocks; `threads` does not change
/// the result.
ExperimentResult run_experiment(std::uint64_t n, ScheduleKind schedule, std::uint64_t seed, unsigned threads = 1);

/// |E(AB) - E(AC)| against 1 + E(BC) and 1 - E(BC), treating the B in
/// (A, B) and (B, C) as one variable. Both signs are reported.
struct NaiveBooleVerdict {
  double lhs;
  double rhs_plus;
  double rhs_minus;
  bool violated_plus;
  bool violated_minus;
};
NaiveBooleVerdict naive_boole(double e_ab, double e_ac, double e_bc);

struct Resolution {
  ineq::ExactCorrelationSet correlations;  // (A(V1), B(V1), B(V2), C(V2)) arrangement
  Rational s;                              // canonical variant
  bool satisfied;                          // |S| <= 2
};
/// The canonical CHSH sum over the four distinct random variables, exact.
Resolution resolution_check();

/// N rows of the predetermined values (A(V1), B(V1), B(V2), C(V2)) for
/// random initial speeds.
ineq::Spreadsheet invisible_spreadsheet(std::size_t n, std::uint64_t seed);

/// CSV with header `trial,v,v1,v2,setting,outA,outB`.
void write_trial_log(std::ostream& os, const std::vector<CollisionTrial>& trials);

}  // namespace bellsim::collision
