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

#include "bellsim/chvm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bellsim/common/error.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/common/rng.hpp"

namespace bellsim::chvm {

namespace {

constexpr std::uint64_t kBlock = 1u << 14;

class Sampler {
 public:
  explicit Sampler(const std::vector<Rational>& p) {
    Rational acc = 0;
    for (const auto& w : p) {
      acc += w;
      cdf_.push_back(to_double(acc));
    }
    cdf_.back() = 1.0;
  }
  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1));
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

Schedule parse_schedule(std::string_view name) {
  if (name == "systematic") return Schedule::systematic;
  if (name == "random") return Schedule::random;
  throw Error("unknown schedule '" + std::string(name) + "' (expected systematic or random)");
}

std::vector<Event> simulate_contextual(const ContextualModel& model, std::uint64_t n, Schedule schedule,
                                       std::uint64_t seed, unsigned threads) {
  model.validate();
  std::vector<Event> events(n);
  if (n == 0) return events;
  const Sampler source(model.source);
  std::array<Sampler, 4> inst = {Sampler(model.instrument[0]), Sampler(model.instrument[1]),
                                 Sampler(model.instrument[2]), Sampler(model.instrument[3])};
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t block) {
    Rng rng(derive_seed(seed, block));
    const std::uint64_t end = std::min<std::uint64_t>(n, (block + 1) * kBlock);
    for (std::uint64_t t = block * kBlock; t < end; ++t) {
      const std::size_t s = schedule == Schedule::systematic ? t % 4 : rng.below(4);
      const std::size_t i = s / 2, j = 2 + s % 2;
      const std::size_t l = source.draw(rng);
      const std::size_t l1 = l / model.k, l2 = l % model.k;
      const std::size_t a = inst[i].draw(rng);
      const std::size_t b = inst[j].draw(rng);
      events[t] = {t, ineq::kSettingPairs[s], static_cast<std::int8_t>(model.at(i, l1, a)),
                   static_cast<std::int8_t>(model.at(j, l2, b))};
    }
  });
  return events;
}

EventSummary summarize(const std::vector<Event>& events) {
  EventSummary s;
  for (const auto& e : events) {
    const std::size_t i = ineq::index(e.setting);
    const int prod = e.a * e.b;
    ++s.trials[i];
    s.product_sum[i] += prod;
    if (prod != 0) {
      ++s.detected[i];
      s.detected_product_sum[i] += prod;
    }
  }
  return s;
}

ineq::CorrelationSet EventSummary::full() const {
  ineq::CorrelationSet c;
  c.counts = trials;
  for (std::size_t i = 0; i < 4; ++i) c.pair[i] = trials[i] ? double(product_sum[i]) / double(trials[i]) : 0.0;
  return c;
}

ineq::CorrelationSet EventSummary::postselected() const {
  ineq::CorrelationSet c;
  c.counts = detected;
  for (std::size_t i = 0; i < 4; ++i) {
    c.pair[i] = detected[i] ? double(detected_product_sum[i]) / double(detected[i]) : 0.0;
  }
  return c;
}

std::array<double, 4> EventSummary::full_stderr() const {
  // Products take values in {-1, 0, 1}; the second moment is the detected fraction.
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (trials[i] == 0) continue;
    const double n = double(trials[i]);
    const double mean = double(product_sum[i]) / n;
    const double second = double(detected[i]) / n;
    out[i] = std::sqrt(std::max(0.0, second - mean * mean) / n);
  }
  return out;
}

std::array<double, 4> EventSummary::postselected_stderr() const {
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (detected[i] == 0) continue;
    const double n = double(detected[i]);
    const double mean = double(detected_product_sum[i]) / n;
    out[i] = std::sqrt(std::max(0.0, 1.0 - mean * mean) / n);
  }
  return out;
}

ineq::SampleTables postselected_tables(const std::vector<Event>& events) {
  ineq::SampleTables tables;
  for (const auto& e : events) {
    if (e.a != 0 && e.b != 0) tables[ineq::index(e.setting)].push_row({e.a, e.b});
  }
  return tables;
}

void write_events_csv(std::ostream& os, const std::vector<Event>& events) {
  os << "trial,setting,outA,outB\n";
  for (const auto& e : events) {
    os << e.trial << ',' << ineq::setting_name(e.setting) << ',' << int(e.a) << ',' << int(e.b) << '\n';
  }
}

}  // namespace bellsim::chvm
