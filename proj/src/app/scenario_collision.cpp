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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsim/app/scenarios.hpp"
#include "bellsim/chvm/simulate.hpp"
#include "bellsim/collision/experiment.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/ineq/chsh.hpp"
#include "util.hpp"

namespace bellsim::app {

using namespace detail;
using nlohmann::json;

namespace {

const char* verdict(bool violated) { return violated ? "violated" : "satisfied"; }

json naive_json(const collision::NaiveBooleVerdict& v) {
  return {{"lhs", v.lhs},
          {"rhs_plus", v.rhs_plus},
          {"rhs_minus", v.rhs_minus},
          {"plus", verdict(v.violated_plus)},
          {"minus", verdict(v.violated_minus)}};
}

collision::ScheduleKind schedule_kind(const std::string& s) {
  return s == "systematic" ? collision::ScheduleKind::systematic : collision::ScheduleKind::random;
}

}  // namespace

void run_collision(const ScenarioConfig& config, Report& report) {
  using collision::Setting;
  const auto& p = config.params;
  auto& out = report.results();
  const auto n = p["trials"].get<std::uint64_t>();
  const auto exp = collision::run_experiment(n, schedule_kind(p["schedule"].get<std::string>()),
                                             seed_for(config.seed, kCollision), config.threads);

  json table = json::array();
  Csv csv("setting,slot,analytic,estimate,std_error,trials");
  bool mc_ok = true;
  for (Setting s : collision::kSettings) {
    const auto slot = ineq::index(collision::chsh_slot(s));
    const auto analytic = collision::analytic_expectation(collision::alice_observable(s), collision::bob_observable(s));
    const double est = to_double(exp.estimates.pair[slot]);
    const double se = exp.standard_error[slot];
    const bool ok = within_sigma(est, to_double(analytic), se, 4.0);
    mc_ok = mc_ok && ok;
    table.push_back({{"setting", collision::setting_name(s)},
                     {"slot", ineq::setting_name(collision::chsh_slot(s))},
                     {"analytic", exact_and_double(analytic)},
                     {"estimate", est},
                     {"std_error", se},
                     {"trials", (*exp.estimates.counts)[slot]},
                     {"within_4_sigma", ok}});
    csv.row(collision::setting_name(s), ineq::setting_name(collision::chsh_slot(s)), to_double(analytic), est, se,
            (*exp.estimates.counts)[slot]);
  }
  out["table"] = table;
  report.write_file("collision_table.csv", csv.str());
  report.check("Monte Carlo estimates within 4 sigma of the analytic values", mc_ok);

  const auto slot = [](Setting s) { return ineq::index(collision::chsh_slot(s)); };
  const double e_ab = to_double(exp.estimates.pair[slot(Setting::AB)]);
  const double e_ac = to_double(exp.estimates.pair[slot(Setting::AC)]);
  const double e_bc = to_double(exp.estimates.pair[slot(Setting::BC)]);
  const auto naive_est = collision::naive_boole(e_ab, e_ac, e_bc);
  const auto a = collision::analytic_expectations();
  const auto naive_exact = collision::naive_boole(to_double(a.e_ab), to_double(a.e_ac), to_double(a.e_bc));
  const double se_diff = std::hypot(exp.standard_error[slot(Setting::AB)], exp.standard_error[slot(Setting::AC)]);
  out["three_variable_inequality"] = {{"estimated", naive_json(naive_est)},
                                      {"analytic", naive_json(naive_exact)},
                                      {"lhs_std_error", se_diff},
                                      {"verdict", verdict(naive_est.violated_plus && naive_est.violated_minus)}};
  report.check("|E(AB) - E(AC)| is within sampling error of 2", within_sigma(naive_est.lhs, 2.0, se_diff, 4.0),
               std::to_string(naive_est.lhs));

  const auto res = collision::resolution_check();
  out["four_variable_chsh"] = {{"correlations", correlations_json(res.correlations)},
                               {"s", exact_and_double(res.s)},
                               {"bound", 2},
                               {"verdict", verdict(!res.satisfied)}};
  report.check("four-variable CHSH sum satisfies |S| <= 2", res.satisfied, to_string(res.s));

  // Conservation in exact arithmetic at the exact double speeds.
  const std::size_t n_cons = std::min<std::size_t>(exp.trials.size(), 10000);
  std::size_t cons_fail = 0;
  for (std::size_t i = 0; i < n_cons; ++i) {
    if (!collision::conservation(exact_from_double(exp.trials[i].v)).exact()) ++cons_fail;
  }
  out["conservation"] = {{"trials_checked", n_cons}, {"failures", cons_fail}};
  report.check("momentum and energy conserved exactly", cons_fail == 0);

  const auto sheet = collision::invisible_spreadsheet(p["invisible_rows"].get<std::size_t>(),
                                                      seed_for(config.seed, kInvisible));
  const auto inv = ineq::chsh_from_spreadsheet(sheet);
  out["invisible_spreadsheet"] = {{"rows", sheet.rows()},
                                  {"correlations", correlations_json(inv.correlations)},
                                  {"s", exact_and_double(inv.s)},
                                  {"max_abs_s", exact_and_double(inv.correlations.chsh_max())}};
  report.check("invisible spreadsheet obeys |S| <= 2 for all variants", inv.correlations.chsh_max() <= 2);

  if (p["write_trial_log"].get<bool>()) {
    std::ostringstream os;
    collision::write_trial_log(os, exp.trials);
    report.write_file("trial_log.csv", os.str());
  }
}

void run_end_to_end(const ScenarioConfig& config, Report& report) {
  const auto& p = config.params;
  auto& out = report.results();
  const auto canonical = ineq::SignVariant::canonical();
  const auto m = p["sample_size"].get<std::size_t>();

  const auto sheet = collision::invisible_spreadsheet(p["invisible_rows"].get<std::size_t>(),
                                                      seed_for(config.seed, kInvisible));
  out["population"] = {{"rows", sheet.rows()},
                       {"s", exact_and_double(ineq::chsh_from_spreadsheet(sheet).s)}};

  // Simple random extraction, one run per seed.
  const auto n_seeds = p["seeds"].get<std::size_t>();
  std::vector<ineq::SampleTables> extracted(n_seeds);
  parallel_for(n_seeds, config.threads, [&](std::size_t r) {
    extracted[r] = ineq::extract_samples(sheet, m, ineq::SimpleRandom{}, derive_seed(seed_for(config.seed, kExtraction), r));
  });
  json runs = json::array();
  std::size_t beyond = 0;
  for (std::size_t r = 0; r < n_seeds; ++r) {
    const double s = to_double(ineq::estimate_from_tables(extracted[r]).chsh(canonical));
    const double se = ineq::chsh_standard_error(extracted[r]);
    const bool over = std::abs(s) > 2.0 + 3.0 * se;
    if (over) ++beyond;
    runs.push_back({{"seed_index", r}, {"s_est", s}, {"std_error", se}, {"beyond_3_sigma", over}});
  }
  out["simple_random"] = {{"sample_size", m}, {"runs", runs}, {"beyond_3_sigma", beyond}};
  report.check("simple random extraction never exceeds 2 by more than 3 sigma", beyond == 0,
               std::to_string(beyond) + " of " + std::to_string(n_seeds));

  // Complete the first extraction to a 4M x 4 sheet, then select rows by a
  // setting-dependent predicate.
  const auto completed = ineq::complete_spreadsheet(extracted.front(), seed_for(config.seed, kCompletion));
  const auto completed_chsh = ineq::chsh_from_spreadsheet(completed);
  const double w = p["predicate_window"].get<double>();
  const auto biased = ineq::extract_samples(completed, m, ineq::SettingDependent{ineq::coincidence_window_predicate(w)},
                                            seed_for(config.seed, kPredicate));
  const auto biased_est = ineq::estimate_from_tables(biased);
  const auto biased_s = biased_est.chsh(canonical);
  out["completed"] = {{"rows", completed.rows()},
                      {"correlations", correlations_json(completed_chsh.correlations)},
                      {"s", exact_and_double(completed_chsh.s)},
                      {"max_abs_s", exact_and_double(completed_chsh.correlations.chsh_max())}};
  out["setting_dependent"] = {{"window", w},
                              {"correlations", correlations_json(biased_est)},
                              {"s_est", exact_and_double(biased_s)},
                              {"std_error", ineq::chsh_standard_error(biased)}};
  report.check("completed sheet obeys |S| <= 2 for all variants", completed_chsh.correlations.chsh_max() <= 2);
  report.check("setting-dependent extraction from the completed sheet gives |S_est| > 2", abs(biased_s) > 2,
               to_string(biased_s));

  // The shipped post-selection model, observed the way a coincidence
  // experiment would record it.
  const auto model = chvm::demo_postselection_model();
  const auto events = chvm::simulate_contextual(model, p["model_trials"].get<std::uint64_t>(), chvm::Schedule::random,
                                                seed_for(config.seed, kSimulate), config.threads);
  const auto post_tables = chvm::postselected_tables(events);
  const auto post_est = ineq::estimate_from_tables(post_tables);
  const auto post_completed = ineq::complete_spreadsheet(post_tables, derive_seed(seed_for(config.seed, kCompletion), 1));
  const auto post_completed_chsh = ineq::chsh_from_spreadsheet(post_completed);
  json counts = json::array();
  for (const auto& t : post_tables) counts.push_back(t.rows());
  out["postselected_model"] = {{"trials", p["model_trials"]},
                               {"table_rows", counts},
                               {"s_est", exact_and_double(post_est.chsh(canonical))},
                               {"std_error", ineq::chsh_standard_error(post_tables)},
                               {"completed_s", exact_and_double(post_completed_chsh.s)},
                               {"completed_max_abs_s", exact_and_double(post_completed_chsh.correlations.chsh_max())}};
  report.check("post-selected model tables give |S_est| > 2", abs(post_est.chsh(canonical)) > 2);
  report.check("completing the post-selected tables gives |S| <= 2", post_completed_chsh.correlations.chsh_max() <= 2);
}

}  // namespace bellsim::app
