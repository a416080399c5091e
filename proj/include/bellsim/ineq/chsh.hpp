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

#include <iosfwd>

#include "bellsim/common/rational.hpp"
#include "bellsim/ineq/correlation.hpp"
#include "bellsim/ineq/sign_table.hpp"

namespace bellsim::ineq {

/// s = ab - ab' + a'b + a'b' for one complete row; always +-2.
int check_row(const Row& row);

struct ChshResult {
  ExactCorrelationSet correlations;
  Rational s;
};

/// Pairwise expectations over all N rows and S for `variant`. Throws on an
/// empty sheet or on holes. |S| <= 2 is checked exactly on every call.
ChshResult chsh_from_spreadsheet(const Spreadsheet& sheet, const SignVariant& variant = SignVariant::canonical());

struct BooleResult {
  Rational e_ab;
  Rational e_ac;
  Rational e_bc;
  Rational lhs;
  Rational rhs;
  bool satisfied = false;
};

/// sign = -1: |E(AB) - E(AC)| <= 1 - E(BC) (Boole's inequality in E form).
/// sign = +1: |E(AB) + E(AC)| <= 1 + E(BC) (the same law with C -> -C).
/// Both follow from the four-column law and hold for every complete table.
BooleResult boole_lg_check(const TripleSheet& sheet, int sign);

/// Empirical frequencies of the 16 row types.
JointDistribution4<Rational> joint_from_spreadsheet(const Spreadsheet& sheet);

/// CSV with header "A,Ap,B,Bp"; empty cell = hole. Errors carry line numbers.
Spreadsheet read_spreadsheet_csv(std::istream& in);
void write_spreadsheet_csv(std::ostream& out, const Spreadsheet& sheet);

}  // namespace bellsim::ineq
