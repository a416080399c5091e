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

#include <atomic>

#include "bellsim/common/error.hpp"
#include "bellsim/simd/tally.hpp"

namespace bellsim::simd {

namespace {

Isa detect() {
#if defined(__aarch64__)
  return Isa::neon;
#elif (defined(__GNUC__) || defined(__clang__)) && defined(__x86_64__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
  return Isa::scalar;
#else
  return Isa::scalar;
#endif
}

const Isa kDetected = detect();
std::atomic<int> g_forced{-1};

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw Error("pair_tally: column lengths differ");
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return kDetected == Isa::avx2;
    case Isa::neon:
      return kDetected == Isa::neon;
  }
  return false;
}

Isa active_isa() {
  int forced = g_forced.load(std::memory_order_relaxed);
  return forced < 0 ? kDetected : static_cast<Isa>(forced);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw Error("instruction set '" + std::string(isa_name(*isa)) + "' is not available");
  }
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

PairTally pair_tally(Isa isa, std::span<const std::int8_t> x, std::span<const std::int8_t> y) {
  check_sizes(x.size(), y.size());
  if (!isa_available(isa)) throw Error("instruction set '" + std::string(isa_name(isa)) + "' is not available");
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return detail::pair_tally_avx2(x.data(), y.data(), x.size());
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return detail::pair_tally_neon(x.data(), y.data(), x.size());
#endif
    default:
      return detail::pair_tally_scalar(x.data(), y.data(), x.size());
  }
}

ColumnTally column_tally(Isa isa, std::span<const std::int8_t> x) {
  if (!isa_available(isa)) throw Error("instruction set '" + std::string(isa_name(isa)) + "' is not available");
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return detail::column_tally_avx2(x.data(), x.size());
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return detail::column_tally_neon(x.data(), x.size());
#endif
    default:
      return detail::column_tally_scalar(x.data(), x.size());
  }
}

PairTally pair_tally(std::span<const std::int8_t> x, std::span<const std::int8_t> y) {
  return pair_tally(active_isa(), x, y);
}

ColumnTally column_tally(std::span<const std::int8_t> x) { return column_tally(active_isa(), x); }

}  // namespace bellsim::simd
