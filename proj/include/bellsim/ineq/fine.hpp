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

#include <optional>

#include "bellsim/ineq/correlation.hpp"

namespace bellsim::ineq {

template <class T>
struct FeasibilityResult {
  bool feasible = false;
  std::optional<JointDistribution4<T>> witness;
};

/// Decides whether some distribution over the 16 deterministic assignments
/// of (A, A', B, B') reproduces the four pairwise expectations and, when
/// present, the four singles. Phase-one simplex with Bland's rule, exact on
/// rationals. Throws if an expectation is outside [-1, 1].
FeasibilityResult<Rational> fine_feasibility(const ExactCorrelationSet& corr);

/// Floating-point version; equality constraints are met to `tol`.
FeasibilityResult<double> fine_feasibility(const CorrelationSet& corr, double tol = 1e-9);

/// Independent route: all eight CHSH variants are <= 2 and, when singles are
/// given, each of the 16 pairwise cell probabilities
/// (1 + a E(A) + b E(B) + ab E(AB)) / 4 is non-negative.
bool chsh_conditions_hold(const ExactCorrelationSet& corr);
bool chsh_conditions_hold(const CorrelationSet& corr, double tol = 1e-9);

}  // namespace bellsim::ineq
