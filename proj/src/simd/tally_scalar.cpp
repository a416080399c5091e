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

#include "bellsim/simd/tally.hpp"

namespace bellsim::simd::detail {

PairTally pair_tally_scalar(const std::int8_t* x, const std::int8_t* y, std::size_t n) {
  PairTally t;
  for (std::size_t i = 0; i < n; ++i) {
    const int p = x[i] * y[i];
    t.product_sum += p;
    t.both_present += p != 0;
  }
  return t;
}

ColumnTally column_tally_scalar(const std::int8_t* x, std::size_t n) {
  ColumnTally t;
  for (std::size_t i = 0; i < n; ++i) {
    t.sum += x[i];
    t.present += x[i] != 0;
  }
  return t;
}

}  // namespace bellsim::simd::detail
