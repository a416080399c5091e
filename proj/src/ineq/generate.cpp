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

#include "bellsim/ineq/generate.hpp"

namespace bellsim::ineq {

Spreadsheet random_spreadsheet(Rng& rng, std::size_t rows, double bias) {
  Row preferred{};
  for (auto& c : preferred) c = static_cast<std::int8_t>(rng.sign());
  Spreadsheet s;
  s.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Row r{};
    for (std::size_t c = 0; c < 4; ++c) {
      r[c] = bias > 0 && rng.uniform01() < bias ? preferred[c] : static_cast<std::int8_t>(rng.sign());
    }
    s.push_row(r);
  }
  return s;
}

Spreadsheet random_extremal_spreadsheet(Rng& rng, std::size_t rows, const SignVariant& variant) {
  std::vector<Row> extremal;
  for (unsigned bits = 0; bits < 16; ++bits) {
    Row r{};
    for (std::size_t c = 0; c < 4; ++c) r[c] = static_cast<std::int8_t>((bits >> c) & 1u ? -1 : 1);
    int s = 0;
    for (auto pair : kSettingPairs) s += variant[index(pair)] * r[alice_column(pair)] * r[bob_column(pair)];
    if (s == 2) extremal.push_back(r);
  }
  Spreadsheet sheet;
  sheet.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) sheet.push_row(extremal[rng.below(extremal.size())]);
  return sheet;
}

TripleSheet random_triple_sheet(Rng& rng, std::size_t rows) {
  TripleSheet s;
  s.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    s.push_row({static_cast<std::int8_t>(rng.sign()), static_cast<std::int8_t>(rng.sign()),
                static_cast<std::int8_t>(rng.sign())});
  }
  return s;
}

}  // namespace bellsim::ineq
