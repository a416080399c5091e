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

#include <fstream>

#include "bellsim/app/scenarios.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/ineq/chsh.hpp"
#include "bellsim/ineq/fine.hpp"
#include "bellsim/ineq/generate.hpp"
#include "bellsim/ineq/sampling.hpp"
#include "util.hpp"

namespace bellsim::app {

using namespace detail;
using nlohmann::json;

namespace {

ineq::Spreadsheet load_or_generate(const ScenarioConfig& config) {
  const auto& p = config.params;
  if (!p["input_csv"].is_null()) {
    const auto path = p["input_csv"].get<std::string>();
    std::ifstream in(path);
    if (!in) throw UsageError("params: '/params/input_csv' cannot open '" + path + "'");
    auto sheet = ineq::read_spreadsheet_csv(in);
    if (sheet.rows() == 0) throw UsageError("params: '/params/input_csv' has no rows");
    if (p["sample_size"].get<std::size_t>() > sheet.rows()) {
      throw UsageError("params: '/params/sample_size' exceeds the " + std::to_string(sheet.rows()) +
                       " rows of the input sheet");
    }
    return sheet;
  }
  Rng rng(seed_for(config.seed, kSheet));
  return ineq::random_spreadsheet(rng, p["rows"].get<std::size_t>());
}

}  // namespace

void run_spreadsheet(const ScenarioConfig& config, Report& report) {
  const auto& p = config.params;
  auto& out = report.results();
  const auto sheet = load_or_generate(config);

  // Every row of a complete sheet contributes +-2.
  std::size_t bad_rows = 0;
  for (std::size_t i = 0; i < sheet.rows(); ++i) {
    const int s = ineq::check_row(sheet.row(i));
    if (s != 2 && s != -2) ++bad_rows;
  }
  report.check("every row gives s = +-2", bad_rows == 0, std::to_string(bad_rows) + " rows off");

  const auto result = ineq::chsh_from_spreadsheet(sheet);
  Rational worst = 0;
  for (const auto& v : ineq::SignVariant::all()) {
    const auto s = abs(result.correlations.chsh(v));
    if (s > worst) worst = s;
  }
  out["sheet"] = {{"rows", sheet.rows()},
                  {"correlations", correlations_json(result.correlations)},
                  {"s_by_variant", variants_json(result.correlations)},
                  {"max_abs_s", exact_and_double(worst)},
                  {"bound", 2}};
  report.check("|S| <= 2 on the sheet for all 8 variants", worst <= 2, to_string(worst));

  const auto joint = ineq::joint_from_spreadsheet(sheet);
  const auto marginals = joint.marginals();
  bool joint_ok = joint.total() == 1;
  for (std::size_t i = 0; i < 4; ++i) joint_ok = joint_ok && marginals.pair[i] == result.correlations.pair[i];
  report.check("row-type frequencies reproduce the pairwise expectations", joint_ok);

  const auto fine = ineq::fine_feasibility(result.correlations);
  out["sheet"]["fine_feasible"] = fine.feasible;
  report.check("sheet expectations are Fine-feasible", fine.feasible);
  {
    std::ostringstream os;
    ineq::write_spreadsheet_csv(os, sheet);
    report.write_file("sheet.csv", os.str());
  }

  // Many random sheets of random size, with a per-sheet bias so the
  // expectations cover [-1, 1].
  const auto n_sheets = p["random_sheets"].get<std::size_t>();
  const auto max_rows = p["rows"].get<std::size_t>();
  std::vector<Rational> sheet_max(n_sheets);
  parallel_for(n_sheets, config.threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed_for(config.seed, kRandomSheets), i));
    const std::size_t rows = 1 + rng.below(max_rows);
    const double bias = rng.uniform01();
    const auto s = ineq::random_spreadsheet(rng, rows, bias);
    sheet_max[i] = ineq::chsh_from_spreadsheet(s).correlations.chsh_max();
  });
  Rational random_worst = 0;
  for (const auto& s : sheet_max) random_worst = s > random_worst ? s : random_worst;
  out["random_sheets"] = {{"count", n_sheets}, {"max_rows", max_rows}, {"max_abs_s", exact_and_double(random_worst)}};
  report.check("|S| <= 2 on every random sheet, all variants", random_worst <= 2, to_string(random_worst));

  Rng triple_rng(seed_for(config.seed, kTriples));
  const auto triples = ineq::random_triple_sheet(triple_rng, p["triple_rows"].get<std::size_t>());
  for (int sign : {-1, 1}) {
    const auto b = ineq::boole_lg_check(triples, sign);
    const std::string key = sign < 0 ? "boole_minus" : "boole_plus";
    out[key] = {{"e_ab", exact_and_double(b.e_ab)},
                {"e_ac", exact_and_double(b.e_ac)},
                {"e_bc", exact_and_double(b.e_bc)},
                {"lhs", exact_and_double(b.lhs)},
                {"rhs", exact_and_double(b.rhs)},
                {"satisfied", b.satisfied}};
    report.check(std::string("three-column inequality (") + (sign < 0 ? "1 - E(BC)" : "1 + E(BC)") + ") holds",
                 b.satisfied);
  }

  // Simple random extraction: M rows per setting pair, many replications.
  const auto m = p["sample_size"].get<std::size_t>();
  const auto reps = p["replications"].get<std::size_t>();
  std::vector<double> s_est(reps), sigma(reps);
  parallel_for(reps, config.threads, [&](std::size_t r) {
    const auto tables = ineq::extract_samples(sheet, m, ineq::SimpleRandom{},
                                              derive_seed(seed_for(config.seed, kExtraction), r));
    s_est[r] = to_double(ineq::estimate_from_tables(tables).chsh(ineq::SignVariant::canonical()));
    sigma[r] = ineq::chsh_standard_error(tables);
  });
  Csv extraction("replication,s_est,std_error");
  std::size_t beyond = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    extraction.row(r, s_est[r], sigma[r]);
    if (std::abs(s_est[r]) > 2.0 + 3.0 * sigma[r]) ++beyond;
  }
  report.write_file("extraction.csv", extraction.str());
  out["simple_random_extraction"] = {{"sample_size", m},
                                     {"replications", reps},
                                     {"beyond_3_sigma", beyond},
                                     {"histogram", histogram_json(make_histogram(s_est, -4, 4, 40))}};
  // A 3 sigma excursion has probability about 0.00135 per replication.
  report.check("simple random extraction exceeds 2 + 3 sigma in under 1% of replications",
               beyond * 100 < reps, std::to_string(beyond) + " of " + std::to_string(reps));

  const double w = p["predicate_window"].get<double>();
  const auto biased = ineq::extract_samples(sheet, m, ineq::SettingDependent{ineq::coincidence_window_predicate(w)},
                                            seed_for(config.seed, kPredicate));
  const auto biased_est = ineq::estimate_from_tables(biased);
  out["setting_dependent_extraction"] = {{"window", w},
                                         {"sample_size", m},
                                         {"correlations", correlations_json(biased_est)},
                                         {"s_est", exact_and_double(biased_est.chsh(ineq::SignVariant::canonical()))},
                                         {"std_error", ineq::chsh_standard_error(biased)},
                                         {"exceeds_2", abs(biased_est.chsh(ineq::SignVariant::canonical())) > 2}};
}

namespace {

ineq::Spreadsheet gill_sheet(const std::string& kind, Rng& rng, std::size_t rows) {
  return kind == "uniform" ? ineq::random_spreadsheet(rng, rows)
                           : ineq::random_extremal_spreadsheet(rng, rows, ineq::SignVariant::gill());
}

}  // namespace

void run_gill(const ScenarioConfig& config, Report& report) {
  const auto& p = config.params;
  auto& out = report.results();
  const auto kind = p["sheet"].get<std::string>();
  Rng rng(seed_for(config.seed, kSheet));
  const auto sheet = gill_sheet(kind, rng, p["rows"].get<std::size_t>());
  const auto reps = p["replications"].get<std::size_t>();
  const auto g = ineq::gill_experiment(sheet, reps, seed_for(config.seed, kGill), config.threads);
  const auto hist = make_histogram(g.s_obs, -4, 4, p["histogram_bins"].get<std::size_t>());
  out["experiment"] = {{"sheet", kind},
                       {"rows", sheet.rows()},
                       {"sheet_s", exact_and_double(ineq::chsh_from_spreadsheet(sheet, ineq::SignVariant::gill()).s)},
                       {"replications", g.replications},
                       {"pr_at_least_2", g.pr_at_least_2},
                       {"pr_above_2", g.pr_above_2},
                       {"bound", 0.5},
                       {"histogram", histogram_json(hist)}};
  report.write_file("s_obs_histogram.csv", histogram_csv(hist));
  report.check("Pr(S_obs > 2) <= 1/2", g.pr_above_2 <= 0.5, std::to_string(g.pr_above_2));
  if (g.pr_at_least_2 > 0.5) {
    out["experiment"]["note"] = "Pr(S_obs >= 2) above 1/2: boundary mass at exactly 2";
  }

  // Exhaustive enumeration of a small sheet against the same Monte Carlo.
  // The extremal sheet keeps both probabilities away from 0 and 1.
  Rng small_rng(seed_for(config.seed, kExhaustive));
  const auto small = gill_sheet("extremal", small_rng, p["exhaustive_rows"].get<std::size_t>());
  const auto exact = ineq::gill_exact(small);
  const auto small_reps = p["exhaustive_replications"].get<std::size_t>();
  const auto mc = ineq::gill_experiment(small, small_reps, derive_seed(seed_for(config.seed, kExhaustive), 1),
                                        config.threads);
  const double ge = to_double(exact.pr_at_least_2), gt = to_double(exact.pr_above_2);
  const double se_ge = binomial_standard_error(ge, small_reps), se_gt = binomial_standard_error(gt, small_reps);
  out["exhaustive"] = {{"rows", small.rows()},
                       {"exact_pr_at_least_2", exact_and_double(exact.pr_at_least_2)},
                       {"exact_pr_above_2", exact_and_double(exact.pr_above_2)},
                       {"mc_replications", small_reps},
                       {"mc_pr_at_least_2", mc.pr_at_least_2},
                       {"mc_pr_above_2", mc.pr_above_2},
                       {"std_error_at_least_2", se_ge},
                       {"std_error_above_2", se_gt}};
  report.check("exhaustive Pr(S_obs >= 2) matches Monte Carlo within 3 sigma",
               within_sigma(mc.pr_at_least_2, ge, se_ge, 3.0));
  report.check("exhaustive Pr(S_obs > 2) matches Monte Carlo within 3 sigma", within_sigma(mc.pr_above_2, gt, se_gt, 3.0));
}

}  // namespace bellsim::app
