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

#include <gtest/gtest.h>

#include <vector>

#include "bellsim/common/rng.hpp"
#include "bellsim/simd/tally.hpp"

namespace bellsim::simd {
namespace {

std::vector<std::int8_t> random_cells(Rng& rng, std::size_t n, double hole_rate) {
  std::vector<std::int8_t> v(n);
  for (auto& c : v) c = rng.uniform01() < hole_rate ? 0 : static_cast<std::int8_t>(rng.sign());
  return v;
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

TEST(SimdTally, VariantsAgreeWithScalarOnAllLengths) {
  Rng rng(7);
  for (std::size_t n = 0; n < 300; ++n) {
    auto x = random_cells(rng, n, 0.1);
    auto y = random_cells(rng, n, 0.1);
    const PairTally ref = pair_tally(Isa::scalar, x, y);
    const ColumnTally cref = column_tally(Isa::scalar, x);
    for (Isa isa : available()) {
      EXPECT_EQ(pair_tally(isa, x, y), ref) << isa_name(isa) << " n=" << n;
      EXPECT_EQ(column_tally(isa, x), cref) << isa_name(isa) << " n=" << n;
    }
  }
}

TEST(SimdTally, VariantsAgreeOnLargeSkewedInput) {
  // All-minus and all-plus runs hit the bias/offset bookkeeping hardest.
  std::vector<std::int8_t> x(1 << 20, -1), y(1 << 20, 1);
  for (std::size_t i = 0; i < x.size(); i += 3) y[i] = -1;
  for (Isa isa : available()) {
    EXPECT_EQ(pair_tally(isa, x, y), pair_tally(Isa::scalar, x, y)) << isa_name(isa);
    EXPECT_EQ(column_tally(isa, x).sum, -static_cast<std::int64_t>(x.size()));
  }
}

TEST(SimdTally, ScalarMatchesHandCount) {
  std::vector<std::int8_t> x = {1, -1, 0, 1, -1};
  std::vector<std::int8_t> y = {1, 1, 1, 0, -1};
  auto t = pair_tally(Isa::scalar, x, y);
  EXPECT_EQ(t.product_sum, 1 - 1 + 1);
  EXPECT_EQ(t.both_present, 3);
  auto c = column_tally(Isa::scalar, x);
  EXPECT_EQ(c.sum, 0);
  EXPECT_EQ(c.present, 4);
}

TEST(SimdTally, ForcingUnavailableIsaThrows) {
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) EXPECT_ANY_THROW(force_isa(isa));
  }
  force_isa(Isa::scalar);
  EXPECT_EQ(active_isa(), Isa::scalar);
  force_isa(std::nullopt);
}

TEST(SimdTally, LengthMismatchThrows) {
  std::vector<std::int8_t> x(3, 1), y(4, 1);
  EXPECT_ANY_THROW(pair_tally(x, y));
}

}  // namespace
}  // namespace bellsim::simd
