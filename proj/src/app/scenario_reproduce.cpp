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
#include <cstdio>

#include "bellsim/app/scenarios.hpp"
#include "bellsim/chvm/random.hpp"
#include "bellsim/chvm/simulate.hpp"
#include "bellsim/collision/experiment.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/ineq/chsh.hpp"
#include "bellsim/ineq/fine.hpp"
#include "bellsim/ineq/generate.hpp"
#include "bellsim/quantum/chsh_operator.hpp"
#include "bellsim/quantum/random.hpp"
#include "util.hpp"

namespace bellsim::app {

using namespace detail;
using nlohmann::json;

namespace {

// Sizes follow the acceptance criteria.
constexpr std::size_t kSheetCount = 10000;
constexpr std::size_t kMaxRows = 1000;
constexpr std::size_t kRandomCases = 1000;
constexpr std::size_t kGillReplications = 10000;
constexpr std::uint64_t kTrials = 1000000;
constexpr std::size_t kInvisibleRows = 100000;
constexpr std::size_t kSampleSize = 10000;
constexpr std::size_t kSeeds = 20;
constexpr double kWindow = 0.2;

class Table {
 public:
  void add(std::string id, std::string category, std::string quantity, std::string relation, std::string reference,
           double reference_value, double computed, double tolerance, std::string exact = "") {
    ReproduceRow r{std::move(id), std::move(category), std::move(quantity), std::move(relation), std::move(reference),
                   reference_value, computed, std::move(exact), tolerance, false};
    if (r.relation == "==") {
      r.pass = std::abs(r.computed - r.reference_value) <= r.tolerance;
    } else if (r.relation == "<=") {
      r.pass = r.computed <= r.reference_value + r.tolerance;
    } else if (r.relation == ">=") {
      r.pass = r.computed >= r.reference_value - r.tolerance;
    } else {
      r.pass = r.computed > r.reference_value;
    }
    rows_.push_back(std::move(r));
  }
  void add_exact(std::string id, std::string category, std::string quantity, std::string relation, std::string reference,
                 const Rational& reference_value, const Rational& computed) {
    add(std::move(id), std::move(category), std::move(quantity), relation, std::move(reference), to_double(reference_value),
        to_double(computed), 0.0, to_string(computed));
    auto& r = rows_.back();
    r.pass = relation == "==" ? computed == reference_value
             : relation == "<=" ? computed <= reference_value
             : relation == ">=" ? computed >= reference_value
                                : computed > reference_value;
  }
  std::vector<ReproduceRow> take() { return std::move(rows_); }

 private:
  std::vector<ReproduceRow> rows_;
};

void spreadsheet_rows(Table& t, const ScenarioConfig& config) {
  std::size_t off = 0;
  for (unsigned bits = 0; bits < 16; ++bits) {
    ineq::Row r{};
    for (unsigned c = 0; c < 4; ++c) r[c] = (bits >> c) & 1u ? -1 : 1;
    const int s = ineq::check_row(r);
    if (s != 2 && s != -2) ++off;
  }
  t.add("S01", "spreadsheet", "rows in {-1,1}^4 with |s| != 2", "==", "0", 0, static_cast<double>(off), 0);

  std::vector<Rational> worst(kSheetCount);
  parallel_for(kSheetCount, config.threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed_for(config.seed, kRandomSheets), i));
    const std::size_t rows = 1 + rng.below(kMaxRows);
    const auto sheet = ineq::random_spreadsheet(rng, rows, rng.uniform01());
    worst[i] = ineq::chsh_from_spreadsheet(sheet).correlations.chsh_max();
  });
  t.add_exact("S02", "spreadsheet", "max |S| over 10^4 random sheets and 8 variants", "<=", "2", 2,
              *std::max_element(worst.begin(), worst.end()));

  Rng rng(seed_for(config.seed, kTriples));
  const auto triples = ineq::random_triple_sheet(rng, kMaxRows);
  for (int sign : {-1, 1}) {
    const auto b = ineq::boole_lg_check(triples, sign);
    t.add_exact(sign < 0 ? "S03" : "S04", "spreadsheet",
                std::string("three-column law |E(AB) ") + (sign < 0 ? "-" : "+") + " E(AC)| - (1 " +
                    (sign < 0 ? "-" : "+") + " E(BC))",
                "<=", "0", 0, Rational(b.lhs - b.rhs));
  }

  Rng sheet_rng(seed_for(config.seed, kSheet));
  const auto sheet = ineq::random_spreadsheet(sheet_rng, kMaxRows);
  const auto g = ineq::gill_experiment(sheet, kGillReplications, seed_for(config.seed, kGill), config.threads);
  t.add("S05", "spreadsheet", "Pr(S_obs > 2), random N = 1000 sheet, 10^4 replications", "<=", "1/2", 0.5, g.pr_above_2, 0);
}

void quantum_rows(Table& t, const ScenarioConfig& config, bool corrupt) {
  // The fault fixture flips the sign of every singlet correlation.
  const double sign = corrupt ? -1.0 : 1.0;
  const auto psi = quantum::singlet_state();
  auto covariance = [&](const quantum::Observable2& a, const quantum::Observable2& b) {
    auto c = quantum::conditional_covariance(psi, a, b);
    c.e_ab *= sign;
    c.cov *= sign;
    return c;
  };
  auto e_ab = [&](const quantum::UnitVector3& a, const quantum::UnitVector3& b) {
    return covariance(quantum::spin_operator(a), quantum::spin_operator(b)).e_ab;
  };
  const quantum::UnitVector3 z(0, 0, 1);
  t.add("Q01", "singlet", "E(A_a B_a), a = z", "==", "-1", -1, e_ab(z, z), 1e-12);
  t.add("Q02", "singlet", "E(A_a B_-a), a = z", "==", "1", 1, e_ab(z, -z), 1e-12);
  const auto sigma_z = quantum::Observable2(quantum::pauli_z());
  t.add("Q03", "singlet", "cov(sigma_z, sigma_z)", "==", "-1", -1, covariance(sigma_z, sigma_z).cov, 1e-12);

  double worst_pair = 0, worst_single = 0;
  Rng rng(seed_for(config.seed, kAxes));
  for (std::size_t i = 0; i < kRandomCases; ++i) {
    const auto a = quantum::random_axis(rng), b = quantum::random_axis(rng);
    const auto c = covariance(quantum::spin_operator(a), quantum::spin_operator(b));
    worst_pair = std::max(worst_pair, std::abs(c.e_ab + a.dot(b)));
    worst_single = std::max({worst_single, std::abs(c.e_a), std::abs(c.e_b)});
  }
  t.add("Q04", "singlet", "max |E(AB) + a.b| over 10^3 random pairs", "==", "0", 0, worst_pair, 1e-12);
  t.add("Q05", "quantum", "max |E(A_a)|, |E(B_b)| over 10^3 random axes", "==", "0", 0, worst_single, 1e-12);

  const auto ts = quantum::tsirelson_settings();
  auto qc = quantum::correlation_set_quantum(psi, ts.a, ts.ap, ts.b, ts.bp).correlations;
  for (auto& e : qc.pair) e *= sign;
  t.add("Q06", "singlet", "E(AB) at the Tsirelson settings", "==", "1/sqrt 2", 1 / std::sqrt(2.0), qc.pair[0], 1e-12);
  t.add("Q07", "singlet", "E(AB') at the Tsirelson settings", "==", "-1/sqrt 2", -1 / std::sqrt(2.0), qc.pair[1],
        1e-12);
  t.add("Q08", "quantum", "|E(AB) - E(AB')| + |E(A'B) + E(A'B')| at the Tsirelson settings", "==", "2 sqrt 2",
        2 * std::sqrt(2.0), qc.chsh_abs(), 1e-10);
  const auto sa = quantum::spin_operator(ts.a), sap = quantum::spin_operator(ts.ap);
  const auto sb = quantum::spin_operator(ts.b), sbp = quantum::spin_operator(ts.bp);
  const double tsirelson_norm = quantum::chsh_operator(sa, sap, sb, sbp).norm();
  t.add("Q09", "quantum", "||S|| at the Tsirelson settings", "==", "2 sqrt 2", 2 * std::sqrt(2.0), tsirelson_norm, 1e-10);

  std::vector<double> norms(kRandomCases), landau(kRandomCases), commuting(kRandomCases), separable(kRandomCases);
  parallel_for(kRandomCases, config.threads, [&](std::size_t i) {
    Rng r(derive_seed(seed_for(config.seed, kAxes), 1000000 + i));
    const auto a = quantum::random_involution(r), ap = quantum::random_involution(r);
    const auto b = quantum::random_involution(r), bp = quantum::random_involution(r);
    norms[i] = quantum::chsh_operator(a, ap, b, bp).norm();
    landau[i] = quantum::tsirelson_inequality_check(a, ap, b, bp).landau_residual.value_or(0.0);
    // On a qubit the observables commuting with a spin operator are +-itself and +-I.
    auto partner = [&](const quantum::UnitVector3& u) {
      switch (r.below(4)) {
        case 0: return quantum::spin_operator(u);
        case 1: return quantum::spin_operator(-u);
        case 2: return quantum::Observable2::identity();
        default: return quantum::Observable2(quantum::Complex(-1.0) * quantum::Matrix2::identity());
      }
    };
    const auto x = quantum::random_axis(r), y = quantum::random_axis(r);
    commuting[i] = quantum::chsh_operator(quantum::spin_operator(x), partner(x), quantum::spin_operator(y), partner(y))
                       .norm();
    Rng s(derive_seed(seed_for(config.seed, kSeparable), i));
    const auto mix = quantum::random_separable(s);
    const auto u = quantum::random_axis(s), up = quantum::random_axis(s);
    const auto v = quantum::random_axis(s), vp = quantum::random_axis(s);
    separable[i] = std::abs(quantum::separable_chsh(mix, u, up, v, vp));
  });
  auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  t.add("Q10", "quantum", "max ||S|| over 10^3 random +-1 observable quadruples", "<=", "2 sqrt 2",
        2 * std::sqrt(2.0), max_of(norms), 1e-9);
  t.add("Q11", "quantum", "max ||S|| with commuting observables on each side", "<=", "2", 2, max_of(commuting), 1e-9);
  t.add("Q12", "quantum", "max Landau residual over 10^3 random quadruples", "==", "0", 0, max_of(landau), 1e-10);
  t.add("Q13", "quantum", "max |S| over 10^3 separable mixtures", "<=", "2", 2, max_of(separable), 1e-9);

  int id = 14;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    const quantum::SphericalCap ca(ts.a, eps), cb(ts.a, eps);
    char buf[64];
    std::snprintf(buf, sizeof buf, "smeared E(AB), a = b, eps = %.2f", eps);
    t.add("Q" + std::to_string(id++), "quantum", buf, "==", "-(1 - eps/2)^2", quantum::smeared_closed_form(ca, cb),
          quantum::smeared_correlation(ca, cb), 1e-6);
  }
}

void fine_rows(Table& t) {
  const auto ts = quantum::tsirelson_settings();
  // a' -> -a' puts 2 sqrt 2 on the canonical variant.
  const auto q = quantum::correlation_set_quantum(quantum::singlet_state(), ts.a, -ts.ap, ts.b, ts.bp).correlations;
  t.add("F01", "fine", "quantum point with S = 2 sqrt 2 has a joint distribution", "==", "no (0)", 0,
        ineq::fine_feasibility(q).feasible ? 1 : 0, 0);
  t.add("F02", "fine", "collision point has a joint distribution", "==", "yes (1)", 1,
        ineq::fine_feasibility(collision::resolution_check().correlations).feasible ? 1 : 0, 0);
}

void chvm_rows(Table& t, const ScenarioConfig& config) {
  const auto model = chvm::demo_postselection_model();
  const auto canonical = ineq::SignVariant::canonical();
  const auto full = chvm::contextual_expectations(model);
  const auto post = chvm::postselect_expectations(model);
  const auto sig = chvm::apparent_signalling(model);
  t.add_exact("C01", "chvm", "shipped model, full-ensemble max |S|", "<=", "2", 2, full.correlations.chsh_max());
  t.add_exact("C02", "chvm", "shipped model, post-selected |S|", ">=", "2.2", Rational(11, 5),
              abs(post.correlations.chsh(canonical)));
  bool raw = true;
  for (const auto& r : sig.rows) raw = raw && r.raw_setting_independent;
  t.add("C03", "chvm", "shipped model, raw marginals setting-independent", "==", "yes (1)", 1, raw ? 1 : 0, 0);
  t.add("C04", "chvm", "shipped model, post-selected marginals signal", "==", "yes (1)", 1,
        sig.any_apparent_signalling() ? 1 : 0, 0);

  std::vector<char> ok(kRandomCases);
  parallel_for(kRandomCases, config.threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed_for(config.seed, kModels), i));
    const auto k = 1 + rng.below(4), m = 1 + rng.below(3);
    const auto rm = chvm::random_contextual(rng, k, m, 0.3);
    const auto e = chvm::contextual_expectations(rm).correlations;
    const auto avg = chvm::averaged_expectations(chvm::bell71_average(rm));
    ok[i] = e.pair == avg.pair && e.single == avg.single && e.chsh_max() <= 2;
  });
  t.add("C05", "chvm", "random models where averaging changes a value or |S| > 2", "==", "0", 0,
        static_cast<double>(std::count(ok.begin(), ok.end(), 0)), 0);

  Rng rng(seed_for(config.seed, kSubdomain));
  const auto whole = chvm::larsson_gill_bound(chvm::random_subdomain(rng, 6, 1.0));
  t.add_exact("C06", "chvm", "subdomain bound with every subset equal to Lambda", "==", "2", 2, whole.bound);
  std::optional<chvm::LarssonGillResult> empty;
  for (int tries = 0; tries < 10000 && !empty; ++tries) {
    const auto r = chvm::larsson_gill_bound(chvm::random_subdomain(rng, 6, 0.3));
    if (r.regime == chvm::SubdomainRegime::empty_intersection) empty = r;
  }
  if (!empty) throw InvariantError("no empty-intersection subdomain model found");
  t.add_exact("C07", "chvm", "subdomain bound with empty four-way intersection (no-signalling cap)", "==", "4", 4,
              empty->bound);
}

void collision_rows(Table& t, const ScenarioConfig& config) {
  const auto a = collision::analytic_expectations();
  t.add_exact("K01", "collision", "E(AB)", "==", "1", 1, a.e_ab);
  t.add_exact("K02", "collision", "E(AC)", "==", "-1", -1, a.e_ac);
  t.add_exact("K03", "collision", "E(BC)", "==", "-1/2", Rational(-1, 2), a.e_bc);
  t.add_exact("K04", "collision", "E(BB)", "==", "1/2", Rational(1, 2), a.e_bb);
  const auto naive = collision::naive_boole(to_double(a.e_ab), to_double(a.e_ac), to_double(a.e_bc));
  t.add("K05", "collision", "|E(AB) - E(AC)| with B read as one variable", "==", "2", 2, naive.lhs, 0);
  t.add("K06", "collision", "three-variable inequality violated for both signs", "==", "yes (1)", 1,
        naive.violated_plus && naive.violated_minus ? 1 : 0, 0);
  const auto res = collision::resolution_check();
  t.add_exact("K07", "collision", "S = E(AB) + E(AC) + E(BB) - E(BC) over four variables", "==", "2", 2, res.s);

  const auto exp = collision::run_experiment(kTrials, collision::ScheduleKind::random,
                                             seed_for(config.seed, kCollision), config.threads);
  std::size_t off = 0;
  for (auto s : collision::kSettings) {
    const auto i = ineq::index(collision::chsh_slot(s));
    const auto an = collision::analytic_expectation(collision::alice_observable(s), collision::bob_observable(s));
    if (!within_sigma(to_double(exp.estimates.pair[i]), to_double(an), exp.standard_error[i], 4.0)) ++off;
  }
  t.add("K08", "collision", "Monte Carlo settings outside 4 sigma, n = 10^6", "==", "0", 0, static_cast<double>(off), 0);
  std::size_t broken = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    if (!collision::conservation(exact_from_double(exp.trials[i].v)).exact()) ++broken;
  }
  t.add("K09", "collision", "trials violating momentum or energy conservation", "==", "0", 0,
        static_cast<double>(broken), 0);
}

void end_to_end_rows(Table& t, const ScenarioConfig& config) {
  const auto canonical = ineq::SignVariant::canonical();
  const auto sheet = collision::invisible_spreadsheet(kInvisibleRows, seed_for(config.seed, kInvisible));
  std::vector<ineq::SampleTables> extracted(kSeeds);
  parallel_for(kSeeds, config.threads, [&](std::size_t r) {
    extracted[r] = ineq::extract_samples(sheet, kSampleSize, ineq::SimpleRandom{},
                                         derive_seed(seed_for(config.seed, kExtraction), r));
  });
  std::size_t beyond = 0;
  for (const auto& tables : extracted) {
    const double s = to_double(ineq::estimate_from_tables(tables).chsh(canonical));
    if (std::abs(s) > 2.0 + 3.0 * ineq::chsh_standard_error(tables)) ++beyond;
  }
  t.add("E01", "end-to-end", "simple random extractions (20 seeds) with |S_est| > 2 + 3 sigma", "==", "0", 0,
        static_cast<double>(beyond), 0);
  const auto completed = ineq::complete_spreadsheet(extracted.front(), seed_for(config.seed, kCompletion));
  t.add_exact("E02", "end-to-end", "completed 4M x 4 sheet, max |S|", "<=", "2", 2,
              ineq::chsh_from_spreadsheet(completed).correlations.chsh_max());
  const auto biased = ineq::extract_samples(
      completed, kSampleSize, ineq::SettingDependent{ineq::coincidence_window_predicate(kWindow)},
      seed_for(config.seed, kPredicate));
  t.add_exact("E03", "end-to-end", "setting-dependent extraction from the completed sheet, |S_est|", ">", "2", 2,
              abs(ineq::estimate_from_tables(biased).chsh(canonical)));
  const auto events = chvm::simulate_contextual(chvm::demo_postselection_model(), kTrials, chvm::Schedule::random,
                                                seed_for(config.seed, kSimulate), config.threads);
  t.add_exact("E04", "end-to-end", "coincidence tables of the shipped model, |S_est|", ">", "2", 2,
              abs(ineq::estimate_from_tables(chvm::postselected_tables(events)).chsh(canonical)));
}

}  // namespace

std::vector<ReproduceRow> reproduce_rows(const ScenarioConfig& config) {
  const bool corrupt = config.params.value("fault_injection", json(nullptr)) == "singlet_sign";
  Table t;
  spreadsheet_rows(t, config);
  quantum_rows(t, config, corrupt);
  fine_rows(t);
  chvm_rows(t, config);
  collision_rows(t, config);
  end_to_end_rows(t, config);
  return t.take();
}

void run_reproduce(const ScenarioConfig& config, Report& report) {
  const auto rows = reproduce_rows(config);
  Csv csv("id,category,quantity,relation,reference,reference_value,computed,computed_exact,tolerance,pass");
  json table = json::array();
  for (const auto& r : rows) {
    csv.row(r.id, r.category, '"' + r.quantity + '"', r.relation, r.reference, r.reference_value, r.computed,
            r.computed_exact, r.tolerance, r.pass ? "yes" : "no");
    table.push_back({{"id", r.id},
                     {"category", r.category},
                     {"quantity", r.quantity},
                     {"relation", r.relation},
                     {"reference", r.reference},
                     {"reference_value", r.reference_value},
                     {"computed", r.computed},
                     {"computed_exact", r.computed_exact},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
    report.check(r.id + " " + r.quantity, r.pass, r.computed_exact.empty() ? "" : r.computed_exact);
  }
  report.results()["rows"] = table;
  if (!config.params["fault_injection"].is_null()) report.results()["fault_injection"] = config.params["fault_injection"];
  report.write_file("reproduce.csv", csv.str());
}

}  // namespace bellsim::app
