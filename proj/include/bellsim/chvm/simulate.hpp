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
#include <iosfwd>
#include <vector>

#include "bellsim/chvm/contextual.hpp"
#include "bellsim/ineq/sampling.hpp"

namespace bellsim::chvm {

enum class Schedule { systematic, random };
Schedule parse_schedule(std::string_view name);

struct Event {
  std::uint64_t trial;
  ineq::SettingPair setting;
  std::int8_t a;  // -1, 0 or +1
  std::int8_t b;
};

/// Draws (l1, l2) from the source, then l_x and l_y from the two instruments
/// of the trial's setting pair. Systematic schedules cycle through the four
/// pairs; random ones draw the pair uniformly. Trials are generated in
/// blocks with seeds derived from (seed, block), so `threads` does not
/// affect the stream.
std::vector<Event> simulate_contextual(const ContextualModel& model, std::uint64_t n, Schedule schedule,
                                       std::uint64_t seed, unsigned threads = 1);

/// Per-pair tallies of an event stream.
struct EventSummary {
  std::array<std::uint64_t, 4> trials{};
  std::array<std::int64_t, 4> product_sum{};   // zeros included
  std::array<std::uint64_t, 4> detected{};     // both outcomes non-zero
  std::array<std::int64_t, 4> detected_product_sum{};

  /// Unconditioned estimates, zeros counted as 0.
  ineq::CorrelationSet full() const;
  /// Estimates over trials with both outcomes non-zero.
  ineq::CorrelationSet postselected() const;
  /// Standard errors of the two estimates per pair.
  std::array<double, 4> full_stderr() const;
  std::array<double, 4> postselected_stderr() const;
};

EventSummary summarize(const std::vector<Event>& events);

/// The detected (both non-zero) events of each setting pair as M x 2
/// tables, the way an experiment that discards non-coincidences stores them.
ineq::SampleTables postselected_tables(const std::vector<Event>& events);

/// CSV with header `trial,setting,outA,outB`.
void write_events_csv(std::ostream& os, const std::vector<Event>& events);

}  // namespace bellsim::chvm
