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

// Seeded generators shared by the property tests.

#include <cmath>
#include <cstdint>

#include "bellsim/common/rng.hpp"
#include "bellsim/ineq/sign_table.hpp"

namespace bellsim::testing {

inline ineq::Spreadsheet random_sheet(Rng& rng, std::size_t rows, double hole_rate = 0.0) {
  ineq::Spreadsheet s;
  s.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    ineq::Row r{};
    for (auto& c : r) c = rng.uniform01() < hole_rate ? ineq::kHole : static_cast<std::int8_t>(rng.sign());
    s.push_row(r);
  }
  return s;
}

/// Rows biased toward a random preferred pattern so that expectations are
/// spread over [-1, 1] rather than clustered at 0.
inline ineq::Spreadsheet skewed_sheet(Rng& rng, std::size_t rows) {
  ineq::Row preferred{};
  for (auto& c : preferred) c = static_cast<std::int8_t>(rng.sign());
  const double bias = rng.uniform01();
  ineq::Spreadsheet s;
  for (std::size_t i = 0; i < rows; ++i) {
    ineq::Row r{};
    for (std::size_t c = 0; c < 4; ++c) {
      r[c] = rng.uniform01() < bias ? preferred[c] : static_cast<std::int8_t>(rng.sign());
    }
    s.push_row(r);
  }
  return s;
}

inline ineq::TripleSheet random_triple(Rng& rng, std::size_t rows) {
  ineq::TripleSheet s;
  for (std::size_t i = 0; i < rows; ++i) {
    s.push_row({static_cast<std::int8_t>(rng.sign()), static_cast<std::int8_t>(rng.sign()),
                static_cast<std::int8_t>(rng.sign())});
  }
  return s;
}

}  // namespace bellsim::testing
