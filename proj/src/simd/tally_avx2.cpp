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

// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "bellsim/simd/tally.hpp"

namespace bellsim::simd::detail {

namespace {

std::int64_t hsum_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

// Cells are in {-1, 0, 1}, so sign_epi8(x, y) is the exact product. Adding 1
// maps products to unsigned {0, 1, 2}, which sad_epu8 sums into 64-bit lanes
// without any overflow bookkeeping; the bias is removed at the end.
PairTally pair_tally_avx2(const std::int8_t* x, const std::int8_t* y, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi8(1);
  __m256i biased = zero;
  __m256i present = zero;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i p = _mm256_sign_epi8(vx, vy);
    biased = _mm256_add_epi64(biased, _mm256_sad_epu8(_mm256_add_epi8(p, one), zero));
    present = _mm256_add_epi64(present, _mm256_sad_epu8(_mm256_abs_epi8(p), zero));
  }
  PairTally t;
  t.product_sum = hsum_epi64(biased) - static_cast<std::int64_t>(i);
  t.both_present = hsum_epi64(present);
  PairTally tail = pair_tally_scalar(x + i, y + i, n - i);
  t.product_sum += tail.product_sum;
  t.both_present += tail.both_present;
  return t;
}

ColumnTally column_tally_avx2(const std::int8_t* x, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi8(1);
  __m256i biased = zero;
  __m256i present = zero;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    biased = _mm256_add_epi64(biased, _mm256_sad_epu8(_mm256_add_epi8(vx, one), zero));
    present = _mm256_add_epi64(present, _mm256_sad_epu8(_mm256_abs_epi8(vx), zero));
  }
  ColumnTally t;
  t.sum = hsum_epi64(biased) - static_cast<std::int64_t>(i);
  t.present = hsum_epi64(present);
  ColumnTally tail = column_tally_scalar(x + i, n - i);
  t.sum += tail.sum;
  t.present += tail.present;
  return t;
}

}  // namespace bellsim::simd::detail
