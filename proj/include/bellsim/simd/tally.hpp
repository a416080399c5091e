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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Integer tallies over columns of +-1 cells (0 marks a hole). These loops are
// the only data-parallel hot spot of the spreadsheet engine, so they come in
// a scalar reference version plus vectorized variants picked at runtime.
namespace bellsim::simd {

enum class Isa { scalar, avx2, neon };

struct PairTally {
  std::int64_t product_sum = 0;   // sum of x[i] * y[i]
  std::int64_t both_present = 0;  // rows where neither cell is a hole
  friend bool operator==(const PairTally&, const PairTally&) = default;
};

struct ColumnTally {
  std::int64_t sum = 0;
  std::int64_t present = 0;
  friend bool operator==(const ColumnTally&, const ColumnTally&) = default;
};

/// Requires x.size() == y.size() and every cell in {-1, 0, +1}.
PairTally pair_tally(std::span<const std::int8_t> x, std::span<const std::int8_t> y);
ColumnTally column_tally(std::span<const std::int8_t> x);

/// Same kernels with the instruction set fixed; throws if `isa` is not
/// available on this machine.
PairTally pair_tally(Isa isa, std::span<const std::int8_t> x, std::span<const std::int8_t> y);
ColumnTally column_tally(Isa isa, std::span<const std::int8_t> x);

bool isa_available(Isa isa);
Isa active_isa();
std::string_view isa_name(Isa isa);

/// Pins dispatch to `isa` (or restores auto-detection with nullopt).
void force_isa(std::optional<Isa> isa);

namespace detail {
PairTally pair_tally_scalar(const std::int8_t* x, const std::int8_t* y, std::size_t n);
ColumnTally column_tally_scalar(const std::int8_t* x, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
PairTally pair_tally_avx2(const std::int8_t* x, const std::int8_t* y, std::size_t n);
ColumnTally column_tally_avx2(const std::int8_t* x, std::size_t n);
#endif
#if defined(__aarch64__)
PairTally pair_tally_neon(const std::int8_t* x, const std::int8_t* y, std::size_t n);
ColumnTally column_tally_neon(const std::int8_t* x, std::size_t n);
#endif
}  // namespace detail

}  // namespace bellsim::simd
