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

#include <cstdint>

#include "bellsim/common/rng.hpp"
#include "bellsim/ineq/correlation.hpp"
#include "bellsim/ineq/sign_table.hpp"

namespace bellsim::ineq {

/// Rows of fair +-1 cells; with bias > 0 each cell copies a random
/// preferred row with that probability, which spreads the expectations
/// over [-1, 1].
Spreadsheet random_spreadsheet(Rng& rng, std::size_t rows, double bias = 0.0);

/// Rows drawn uniformly from the eight whose CHSH value under `variant` is
/// +2, so the sheet's S sits exactly on the bound.
Spreadsheet random_extremal_spreadsheet(Rng& rng, std::size_t rows, const SignVariant& variant);

TripleSheet random_triple_sheet(Rng& rng, std::size_t rows);

}  // namespace bellsim::ineq
