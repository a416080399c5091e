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

/// One Lambda with distribution p and four +-1 outcome functions; each
/// setting pair only sees the rows in its own subset Lambda_pair.
struct SubdomainModel {
  std::vector<Rational> p;
  std::array<std::vector<std::int8_t>, 4> outcome;  // A_x, A_x', B_y, B_y'
  std::array<std::vector<bool>, 4> subset;         // indexed by SettingPair

  void validate() const;
};

enum class SubdomainRegime { full, empty_intersection, intermediate };
const char* regime_name(SubdomainRegime r);

struct LarssonGillResult {
  ineq::ExactCorrelationSet conditional;  // E(A B | Lambda_pair)
  Rational s;                             // |E_xy - E_xy'| + |E_x'y + E_x'y'|
  Rational delta;                         // p of the four-way intersection
  Rational bound;                         // 4 - 2 delta
  SubdomainRegime regime;
  bool within_bound;                      // s <= bound, reported only
};

/// Asserts the two forced endpoints: every subset equal to Lambda gives
/// bound 2 with s <= 2; an empty four-way intersection gives bound 4 with
/// s <= 4. Throws Error on a zero-mass subset.
LarssonGillResult larsson_gill_bound(const SubdomainModel& model);

}  // namespace bellsim::chvm
