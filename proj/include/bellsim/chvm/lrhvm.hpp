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
#include <vector>

#include "bellsim/common/rational.hpp"
#include "bellsim/ineq/correlation.hpp"

namespace bellsim::chvm {

/// Bell's deterministic local model on a finite Lambda: one distribution p
/// and four outcome functions, indexed like the spreadsheet columns
/// (A_a, A_a', B_b, B_b').
struct LrhvmModel {
  std::vector<Rational> p;
  std::array<std::vector<std::int8_t>, 4> outcome;

  std::size_t size() const { return p.size(); }
  /// Non-empty Lambda, p >= 0 summing to exactly 1, outcomes in {-1, +1}.
  void validate() const;
};

/// Direct sums E = sum_l A(l) B(l) p(l) plus singles. Asserts |S| <= 2 for
/// every sign variant.
ineq::ExactCorrelationSet lrhvm_expectations(const LrhvmModel& model);

struct CounterfactualTable {
  ineq::JointDistribution4<Rational> joint;
  Rational four_way;  // E(A_a A_a' B_b B_b')
};

/// Pushforward of p through l -> (A_a(l), A_a'(l), B_b(l), B_b'(l)).
CounterfactualTable lrhvm_counterfactual_table(const LrhvmModel& model);

}  // namespace bellsim::chvm
