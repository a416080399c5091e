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

#include "bellsim/ineq/chsh.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "bellsim/common/error.hpp"
#include "bellsim/simd/tally.hpp"

namespace bellsim::ineq {

int check_row(const Row& row) {
  for (std::int8_t v : row) {
    if (v == kHole) throw Error("counterfactual row incomplete");
    if (v != 1 && v != -1) throw Error("row entries must be +1 or -1");
  }
  const int a = row[0], ap = row[1], b = row[2], bp = row[3];
  const int s = a * b - a * bp + ap * b + ap * bp;
  if (s != 2 && s != -2) throw InvariantError("row value outside {-2, 2}");
  return s;
}

ChshResult chsh_from_spreadsheet(const Spreadsheet& sheet, const SignVariant& variant) {
  if (sheet.empty()) throw Error("spreadsheet is empty");
  const auto n = static_cast<std::int64_t>(sheet.rows());
  std::array<std::int64_t, 4> pair_sums{};
  for (SettingPair s : kSettingPairs) {
    auto t = simd::pair_tally(sheet.column(alice_column(s)), sheet.column(bob_column(s)));
    if (t.both_present != n) throw Error("counterfactual row incomplete: spreadsheet has holes");
    pair_sums[index(s)] = t.product_sum;
  }
  std::array<std::int64_t, 4> single_sums{};
  for (std::size_t c = 0; c < 4; ++c) single_sums[c] = simd::column_tally(sheet.column(c)).sum;

  // Integer form of |S| <= 2: |sum_i sign_i * pair_sum_i| <= 2N.
  std::int64_t numerator = 0;
  for (std::size_t i = 0; i < 4; ++i) numerator += variant[i] * pair_sums[i];
  if (std::llabs(numerator) > 2 * n) throw InvariantError("spreadsheet CHSH bound violated");

  ChshResult r;
  std::array<Rational, 4> singles;
  for (std::size_t i = 0; i < 4; ++i) {
    r.correlations.pair[i] = Rational(pair_sums[i], n);
    singles[i] = Rational(single_sums[i], n);
  }
  r.correlations.single = singles;
  const auto un = static_cast<std::uint64_t>(n);
  r.correlations.counts = std::array<std::uint64_t, 4>{un, un, un, un};
  r.s = Rational(numerator, n);
  return r;
}

BooleResult boole_lg_check(const TripleSheet& sheet, int sign) {
  if (sign != 1 && sign != -1) throw Error("Boole sign must be +1 or -1");
  if (sheet.empty()) throw Error("table is empty");
  const auto n = static_cast<std::int64_t>(sheet.rows());
  auto tally = [&](std::size_t c1, std::size_t c2) {
    auto t = simd::pair_tally(sheet.column(c1), sheet.column(c2));
    if (t.both_present != n) throw Error("table has holes");
    return Rational(t.product_sum, n);
  };
  BooleResult r;
  r.e_ab = tally(0, 1);
  r.e_ac = tally(0, 2);
  r.e_bc = tally(1, 2);
  r.lhs = abs(r.e_ab + sign * r.e_ac);
  r.rhs = 1 + sign * r.e_bc;
  r.satisfied = r.lhs <= r.rhs;
  return r;
}

JointDistribution4<Rational> joint_from_spreadsheet(const Spreadsheet& sheet) {
  if (sheet.empty()) throw Error("spreadsheet is empty");
  if (sheet.has_holes()) throw Error("counterfactual row incomplete: spreadsheet has holes");
  std::array<std::int64_t, 16> counts{};
  for (std::size_t i = 0; i < sheet.rows(); ++i) {
    const Row r = sheet.row(i);
    ++counts[JointDistribution4<Rational>::index_of(r[0], r[1], r[2], r[3])];
  }
  JointDistribution4<Rational> j;
  const auto n = static_cast<std::int64_t>(sheet.rows());
  for (std::size_t k = 0; k < 16; ++k) j.p[k] = Rational(counts[k], n);
  return j;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Spreadsheet read_spreadsheet_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error("spreadsheet CSV: missing header");
  ++line_no;
  if (trim(line) != "A,Ap,B,Bp") throw Error("spreadsheet CSV line 1: header must be 'A,Ap,B,Bp'");
  Spreadsheet sheet;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Row row{};
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      std::string cell = trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (field >= 4) throw Error("spreadsheet CSV line " + std::to_string(line_no) + ": more than 4 fields");
      if (cell.empty()) {
        row[field] = kHole;
      } else if (cell == "1" || cell == "+1") {
        row[field] = 1;
      } else if (cell == "-1") {
        row[field] = -1;
      } else {
        throw Error("spreadsheet CSV line " + std::to_string(line_no) + ": invalid cell '" + cell + "'");
      }
      ++field;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (field != 4) throw Error("spreadsheet CSV line " + std::to_string(line_no) + ": expected 4 fields");
    sheet.push_row(row);
  }
  return sheet;
}

void write_spreadsheet_csv(std::ostream& out, const Spreadsheet& sheet) {
  out << "A,Ap,B,Bp\n";
  for (std::size_t i = 0; i < sheet.rows(); ++i) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (c) out << ',';
      const std::int8_t v = sheet.at(i, c);
      if (v != kHole) out << static_cast<int>(v);
    }
    out << '\n';
  }
}

}  // namespace bellsim::ineq
