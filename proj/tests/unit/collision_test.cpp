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

#include <cmath>
#include <sstream>

#include "bellsim/collision/experiment.hpp"
#include "bellsim/common/rng.hpp"
#include "bellsim/ineq/chsh.hpp"
#include "bellsim/ineq/fine.hpp"

namespace bellsim::collision {
namespace {

TEST(Collision, AnalyticValuesAreExact) {
  const auto a = analytic_expectations();
  EXPECT_EQ(a.e_ab, 1);
  EXPECT_EQ(a.e_ac, -1);
  EXPECT_EQ(a.e_bc, Rational(-1, 2));
  EXPECT_EQ(a.e_bb, Rational(1, 2));
}

TEST(Collision, AnalyticIntegrationAgainstFineGrid) {
  // Midpoint rule on 12000 cells of (0, 4]: every threshold (4/3, 2, 3) sits on
  // a cell edge, so the sum is exact.
  for (Observable x : {Observable::A, Observable::B, Observable::C}) {
    for (Observable y : {Observable::A, Observable::B, Observable::C}) {
      Rational sum = 0;
      const int cells = 12000;
      for (int i = 0; i < cells; ++i) {
        const Rational mid = Rational(4 * (2 * i + 1), 2 * cells);
        sum += evaluate(x, mid) * evaluate(y, Rational(3, 2) * mid);
      }
      EXPECT_EQ(analytic_expectation(x, y), sum / cells);
    }
  }
}

TEST(Collision, TrialExamples) {
  auto t = evaluate_trial(10, Setting::AB);
  EXPECT_EQ(t.v1, 4.0);
  EXPECT_EQ(t.v2, 6.0);
  EXPECT_EQ(t.out_a, 1);
  EXPECT_EQ(t.out_b, 1);
  t = evaluate_trial(5, Setting::BC);
  EXPECT_EQ(t.out_a, -1);  // B(2)
  EXPECT_EQ(t.out_b, 1);   // C(3), boundary belongs to y <= 3
  t = evaluate_trial(5, Setting::BB);
  EXPECT_EQ(t.out_a, -1);
  EXPECT_EQ(t.out_b, -1);
  EXPECT_EQ(t.out_a * t.out_b, 1);
  EXPECT_THROW(evaluate_trial(0.0, Setting::AB), Error);
  EXPECT_THROW(evaluate_trial(10.5, Setting::AB), Error);
}

TEST(Collision, ThresholdsDecidedOnExactSpeed) {
  // Just above v = 5 the heavy ball exceeds 2 even if 2v/5 rounds to 2.
  const double above = std::nextafter(5.0, 10.0);
  EXPECT_EQ(evaluate_trial(above, Setting::AB).out_a, 1);
  EXPECT_EQ(evaluate_trial(5.0, Setting::AB).out_a, -1);
  Rng rng(41);
  for (int i = 0; i < 100000; ++i) {
    const double v = 10.0 * rng.uniform_open_closed();
    const Rational ev = exact_from_double(v);
    for (Setting s : kSettings) {
      auto t = evaluate_trial(v, s);
      EXPECT_EQ(t.out_a, evaluate(alice_observable(s), Rational(2, 5) * ev));
      EXPECT_EQ(t.out_b, evaluate(bob_observable(s), Rational(3, 5) * ev));
    }
  }
}

TEST(Collision, PureFunctionOfSpeedAndSetting) {
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double v = 10.0 * rng.uniform_open_closed();
    for (Setting s : kSettings) {
      auto a = evaluate_trial(v, s), b = evaluate_trial(v, s);
      EXPECT_EQ(a.out_a, b.out_a);
      EXPECT_EQ(a.out_b, b.out_b);
      EXPECT_EQ(a.v1, b.v1);
    }
  }
}

TEST(Collision, ConservationIsExact) {
  Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(conservation(exact_from_double(10.0 * rng.uniform_open_closed())).exact());
    EXPECT_TRUE(conservation(Rational(1 + std::int64_t(rng.below(1000)), 1 + std::int64_t(rng.below(997)))).exact());
  }
}

TEST(Collision, SystematicFourTrials) {
  auto r = run_experiment(4, ScheduleKind::systematic, 1);
  for (const auto& t : r.tables) EXPECT_EQ(t.rows(), 1u);
  for (auto c : *r.estimates.counts) EXPECT_EQ(c, 1u);
}

TEST(Collision, MonteCarloWithinFourSigma) {
  auto r = run_experiment(1'000'000, ScheduleKind::random, 7);
  const auto res = resolution_check();
  for (std::size_t i = 0; i < 4; ++i) {
    const double est = to_double(r.estimates.pair[i]);
    const double exact = to_double(res.correlations.pair[i]);
    EXPECT_LE(std::abs(est - exact), 4 * r.standard_error[i] + 1e-12) << i;
  }
  // E(AB) and E(AC) are +-1 for every trial, so their difference is exactly 2.
  const double diff =
      std::abs(to_double(r.estimates[ineq::SettingPair::ab] - r.estimates[ineq::SettingPair::abp]));
  EXPECT_EQ(diff, 2.0);
}

TEST(Collision, ThreadCountDoesNotChangeTrials) {
  auto a = run_experiment(100000, ScheduleKind::random, 3, 1);
  auto b = run_experiment(100000, ScheduleKind::random, 3, 3);
  EXPECT_EQ(a.estimates.pair, b.estimates.pair);
  for (std::size_t i = 0; i < a.trials.size(); ++i) ASSERT_EQ(a.trials[i].v, b.trials[i].v);
}

TEST(Collision, NaiveInequalityViolatedBothSigns) {
  const auto a = analytic_expectations();
  auto v = naive_boole(to_double(a.e_ab), to_double(a.e_ac), to_double(a.e_bc));
  EXPECT_EQ(v.lhs, 2.0);
  EXPECT_EQ(v.rhs_plus, 0.5);
  EXPECT_EQ(v.rhs_minus, 1.5);
  EXPECT_TRUE(v.violated_plus);
  EXPECT_TRUE(v.violated_minus);
}

TEST(Collision, ResolutionIsExactlyTwoAndFeasible) {
  const auto r = resolution_check();
  EXPECT_EQ(r.s, 2);
  EXPECT_TRUE(r.satisfied);
  // Singles by hand: A(V1) and B(V2), C(V2) split their ranges evenly; B(V1)
  // is -1 on three quarters of (0, 4].
  auto c = r.correlations;
  c.single = std::array<Rational, 4>{0, Rational(-1, 2), 0, 0};
  EXPECT_TRUE(ineq::fine_feasibility(c).feasible);
}

TEST(Collision, InvisibleSheetObeysChshAndSamplingRespectsIt) {
  auto sheet = invisible_spreadsheet(100000, 5);
  auto full = ineq::chsh_from_spreadsheet(sheet);
  EXPECT_LE(abs(full.s), 2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto tables = ineq::extract_samples(sheet, 10000, ineq::SimpleRandom{}, seed);
    auto est = ineq::estimate_from_tables(tables);
    double var = 0;
    for (const auto& e : est.pair) var += (1 - to_double(e) * to_double(e)) / 10000.0;
    EXPECT_LE(to_double(est.chsh(ineq::SignVariant::canonical())), 2 + 3 * std::sqrt(var)) << seed;
  }
}

TEST(Collision, TrialLogFormat) {
  std::ostringstream os;
  write_trial_log(os, {evaluate_trial(5, Setting::BC)});
  EXPECT_EQ(os.str(), "trial,v,v1,v2,setting,outA,outB\n0,5,2,3,BC,-1,1\n");
}

}  // namespace
}  // namespace bellsim::collision
