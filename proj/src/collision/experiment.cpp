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

#include "bellsim/collision/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include "bellsim/common/error.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/common/rng.hpp"

namespace bellsim::collision {

namespace {

constexpr std::uint64_t kBlock = 1u << 14;

// Sign of (c v - 5 t) for y = (c/5) v, decided exactly.
int outcome_for_speed(Observable o, double v, int c) {
  const ObservableDef d = definition(o);
  const bool at_or_below = std::fma(double(c), v, -5.0 * d.threshold) <= 0.0;
  return at_or_below ? d.value_at_or_below : -d.value_at_or_below;
}

double draw_speed(Rng& rng) { return kMaxSpeed * rng.uniform_open_closed(); }

}  // namespace

ObservableDef definition(Observable o) {
  switch (o) {
    case Observable::A: return {o, 2, -1};
    case Observable::B: return {o, 3, -1};
    case Observable::C: return {o, 3, 1};
  }
  throw Error("unknown observable");
}

int evaluate(Observable o, const Rational& y) {
  const ObservableDef d = definition(o);
  return y <= d.threshold ? d.value_at_or_below : -d.value_at_or_below;
}

std::string_view setting_name(Setting s) {
  switch (s) {
    case Setting::AB: return "AB";
    case Setting::AC: return "AC";
    case Setting::BC: return "BC";
    case Setting::BB: return "BB";
  }
  return "?";
}

Observable alice_observable(Setting s) { return s == Setting::BC || s == Setting::BB ? Observable::B : Observable::A; }

Observable bob_observable(Setting s) {
  return s == Setting::AC || s == Setting::BC ? Observable::C : Observable::B;
}

ineq::SettingPair chsh_slot(Setting s) {
  switch (s) {
    case Setting::AB: return ineq::SettingPair::ab;
    case Setting::AC: return ineq::SettingPair::abp;
    case Setting::BB: return ineq::SettingPair::apb;
    case Setting::BC: return ineq::SettingPair::apbp;
  }
  throw Error("unknown setting");
}

CollisionTrial evaluate_trial(double v, Setting setting) {
  if (!(v > 0.0 && v <= kMaxSpeed)) throw Error("initial speed must lie in (0, 10]");
  CollisionTrial t;
  t.v = v;
  t.v1 = 2.0 * v / 5.0;
  t.v2 = 3.0 * v / 5.0;
  t.setting = setting;
  t.out_a = static_cast<std::int8_t>(outcome_for_speed(alice_observable(setting), v, 2));
  t.out_b = static_cast<std::int8_t>(outcome_for_speed(bob_observable(setting), v, 3));
  return t;
}

ConservationCheck conservation(const Rational& v) {
  const Rational v1 = Rational(2, 5) * v;
  const Rational v2 = Rational(3, 5) * v;
  return {v - (4 * v1 - v2), v * v - (4 * v1 * v1 + v2 * v2)};
}

Rational analytic_expectation(Observable alice, Observable bob) {
  // V1 uniform on (0, 4], V2 = 3 V1 / 2. Break the range at every threshold
  // of either function (expressed in v1) and sum value * length / 4.
  const Rational hi = 4;
  std::set<Rational> cuts = {Rational(0), hi};
  const Rational ta = definition(alice).threshold;
  const Rational tb = Rational(2, 3) * definition(bob).threshold;
  for (const Rational& c : {ta, tb}) {
    if (c > 0 && c < hi) cuts.insert(c);
  }
  Rational e = 0;
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    const Rational lo = *it, up = *std::next(it);
    const Rational mid = (lo + up) / 2;
    e += (up - lo) / 4 * (evaluate(alice, mid) * evaluate(bob, Rational(3, 2) * mid));
  }
  return e;
}

AnalyticExpectations analytic_expectations() {
  return {analytic_expectation(Observable::A, Observable::B), analytic_expectation(Observable::A, Observable::C),
          analytic_expectation(Observable::B, Observable::C), analytic_expectation(Observable::B, Observable::B)};
}

ExperimentResult run_experiment(std::uint64_t n, ScheduleKind schedule, std::uint64_t seed, unsigned threads) {
  ExperimentResult r;
  r.trials.resize(n);
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t block) {
    Rng rng(derive_seed(seed, block));
    const std::uint64_t end = std::min<std::uint64_t>(n, (block + 1) * kBlock);
    for (std::uint64_t t = block * kBlock; t < end; ++t) {
      const std::size_t s = schedule == ScheduleKind::systematic ? t % 4 : rng.below(4);
      r.trials[t] = evaluate_trial(draw_speed(rng), kSettings[s]);
    }
  });
  for (const auto& t : r.trials) r.tables[ineq::index(chsh_slot(t.setting))].push_row({t.out_a, t.out_b});
  r.estimates = ineq::estimate_from_tables(r.tables);
  for (std::size_t i = 0; i < 4; ++i) {
    const double m = double((*r.estimates.counts)[i]);
    if (m == 0) continue;
    const double e = to_double(r.estimates.pair[i]);
    r.standard_error[i] = std::sqrt(std::max(0.0, 1.0 - e * e) / m);
  }
  return r;
}

NaiveBooleVerdict naive_boole(double e_ab, double e_ac, double e_bc) {
  NaiveBooleVerdict v;
  v.lhs = std::abs(e_ab - e_ac);
  v.rhs_plus = 1.0 + e_bc;
  v.rhs_minus = 1.0 - e_bc;
  v.violated_plus = v.lhs > v.rhs_plus;
  v.violated_minus = v.lhs > v.rhs_minus;
  return v;
}

Resolution resolution_check() {
  Resolution r;
  const auto a = analytic_expectations();
  r.correlations[chsh_slot(Setting::AB)] = a.e_ab;
  r.correlations[chsh_slot(Setting::AC)] = a.e_ac;
  r.correlations[chsh_slot(Setting::BB)] = a.e_bb;
  r.correlations[chsh_slot(Setting::BC)] = a.e_bc;
  r.s = r.correlations.chsh(ineq::SignVariant::canonical());
  r.satisfied = abs(r.s) <= 2;
  if (!r.satisfied) throw InvariantError("collision CHSH sum over the four predetermined variables exceeds 2");
  return r;
}

ineq::Spreadsheet invisible_spreadsheet(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ineq::Spreadsheet sheet;
  sheet.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = draw_speed(rng);
    sheet.push_row({static_cast<std::int8_t>(outcome_for_speed(Observable::A, v, 2)),
                    static_cast<std::int8_t>(outcome_for_speed(Observable::B, v, 2)),
                    static_cast<std::int8_t>(outcome_for_speed(Observable::B, v, 3)),
                    static_cast<std::int8_t>(outcome_for_speed(Observable::C, v, 3))});
  }
  return sheet;
}

void write_trial_log(std::ostream& os, const std::vector<CollisionTrial>& trials) {
  os << "trial,v,v1,v2,setting,outA,outB\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    os << i << ',' << t.v << ',' << t.v1 << ',' << t.v2 << ',' << setting_name(t.setting) << ',' << int(t.out_a)
       << ',' << int(t.out_b) << '\n';
  }
}

}  // namespace bellsim::collision
