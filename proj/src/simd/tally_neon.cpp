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

#if defined(__aarch64__)
#include <arm_neon.h>

namespace bellsim::simd::detail {

namespace {

// 16-bit pairwise accumulators hold at most 2 per lane per block, so flush
// to 64 bits well before 2^15.
constexpr std::size_t kFlushBlocks = 8192;

std::int64_t widen_sum(int16x8_t v) { return vaddlvq_s16(v); }

}  // namespace

PairTally pair_tally_neon(const std::int8_t* x, const std::int8_t* y, std::size_t n) {
  PairTally t;
  std::size_t i = 0;
  while (i + 16 <= n) {
    int16x8_t prod = vdupq_n_s16(0);
    int16x8_t pres = vdupq_n_s16(0);
    for (std::size_t b = 0; b < kFlushBlocks && i + 16 <= n; ++b, i += 16) {
      int8x16_t p = vmulq_s8(vld1q_s8(x + i), vld1q_s8(y + i));
      prod = vpadalq_s8(prod, p);
      pres = vpadalq_s8(pres, vabsq_s8(p));
    }
    t.product_sum += widen_sum(prod);
    t.both_present += widen_sum(pres);
  }
  PairTally tail = pair_tally_scalar(x + i, y + i, n - i);
  t.product_sum += tail.product_sum;
  t.both_present += tail.both_present;
  return t;
}

ColumnTally column_tally_neon(const std::int8_t* x, std::size_t n) {
  ColumnTally t;
  std::size_t i = 0;
  while (i + 16 <= n) {
    int16x8_t sum = vdupq_n_s16(0);
    int16x8_t pres = vdupq_n_s16(0);
    for (std::size_t b = 0; b < kFlushBlocks && i + 16 <= n; ++b, i += 16) {
      int8x16_t v = vld1q_s8(x + i);
      sum = vpadalq_s8(sum, v);
      pres = vpadalq_s8(pres, vabsq_s8(v));
    }
    t.sum += widen_sum(sum);
    t.present += widen_sum(pres);
  }
  ColumnTally tail = column_tally_scalar(x + i, n - i);
  t.sum += tail.sum;
  t.present += tail.present;
  return t;
}

}  // namespace bellsim::simd::detail

#endif
