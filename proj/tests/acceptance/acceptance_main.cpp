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

// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "bellsim/app/config.hpp"
#include "bellsim/app/scenarios.hpp"
#include "bellsim/chvm/contextual.hpp"
#include "bellsim/chvm/model_json.hpp"
#include "bellsim/chvm/simulate.hpp"
#include "bellsim/collision/experiment.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/ineq/chsh.hpp"
#include "bellsim/ineq/fine.hpp"
#include "bellsim/ineq/generate.hpp"
#include "bellsim/ineq/sampling.hpp"
#include "bellsim/quantum/chsh_operator.hpp"
#include "chvm_generators.hpp"
#include "generators.hpp"
#include "quantum_generators.hpp"

using namespace bellsim;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const unsigned kThreads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Eigen::Matrix4cd to_eigen(const quantum::Matrix4& m) {
  Eigen::Matrix4cd e;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  }
  return e;
}

Eigen::Matrix2cd to_eigen(const quantum::Matrix2& m) {
  Eigen::Matrix2cd e;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) e(i, j) = m(i, j);
  }
  return e;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return k;
}

// 1 ------------------------------------------------------------------------
Outcome spreadsheet_law() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t kSheets = 10000;
  std::vector<char> ok(kSheets, 1);
  parallel_for(kSheets, kThreads, [&](std::size_t i) {
    Rng rng(derive_seed(101, i));
    const std::size_t rows = 1 + rng.below(1000);
    const auto sheet = i % 2 ? testing::skewed_sheet(rng, rows) : testing::random_sheet(rng, rows);
    // Integer oracle: sum the signed products row by row.
    const auto module = ineq::chsh_from_spreadsheet(sheet).correlations;
    for (const auto& v : ineq::SignVariant::all()) {
      std::int64_t total = 0;
      for (std::size_t r = 0; r < sheet.rows(); ++r) {
        const auto row = sheet.row(r);
        for (auto s : ineq::kSettingPairs) {
          total += v[ineq::index(s)] * row[ineq::alice_column(s)] * row[ineq::bob_column(s)];
        }
      }
      const auto n = static_cast<std::int64_t>(rows);
      if (total > 2 * n || total < -2 * n || module.chsh(v) != Rational(total, n)) ok[i] = 0;
    }
  });
  const double secs = seconds_since(t0);
  const bool all = std::count(ok.begin(), ok.end(), 0) == 0;
  return {all && secs < 10.0, fmt("10^4 sheets x 8 variants exact, %.2f s", secs)};
}

// 2 ------------------------------------------------------------------------
Outcome quantum_singlet() {
  Rng rng(202);
  const auto psi = quantum::singlet_state();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_axis(rng), b = testing::random_axis(rng);
    const double e = quantum::conditional_covariance(psi, quantum::spin_operator(a), quantum::spin_operator(b)).e_ab;
    worst = std::max(worst, std::abs(e + a.dot(b)));
  }
  return {worst <= 1e-12, fmt("max |E(AB) + a.b| = %.2e", worst)};
}

// 3 ------------------------------------------------------------------------
Outcome tsirelson() {
  const auto t = quantum::tsirelson_settings();
  const auto psi = quantum::singlet_state();
  const double s_abs = quantum::correlation_set_quantum(psi, t.a, t.ap, t.b, t.bp).correlations.chsh_abs();
  const double s_flip = quantum::correlation_set_quantum(psi, t.a, -t.ap, t.b, t.bp)
                            .correlations.chsh(ineq::SignVariant::canonical());
  Rng rng(303);
  double worst = 0, worst_oracle = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_involution(rng), ap = testing::random_involution(rng);
    const auto b = testing::random_involution(rng), bp = testing::random_involution(rng);
    const auto s = quantum::chsh_operator(a, ap, b, bp);
    worst = std::max(worst, s.norm());
    const Eigen::Matrix4cd e = kron(to_eigen(a.matrix()), to_eigen(b.matrix()) - to_eigen(bp.matrix())) +
                               kron(to_eigen(ap.matrix()), to_eigen(b.matrix()) + to_eigen(bp.matrix()));
    worst_oracle = std::max(worst_oracle, Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(e).eigenvalues().cwiseAbs().maxCoeff());
  }
  const bool pass = std::abs(s_abs - 2 * kSqrt2) <= 1e-10 && std::abs(s_flip - 2 * kSqrt2) <= 1e-10 &&
                    worst <= 2 * kSqrt2 + 1e-9 && worst_oracle <= 2 * kSqrt2 + 1e-9;
  return {pass, fmt("S = %.12f, max ||S|| = %.12f (Eigen %.12f)", s_abs, worst, worst_oracle)};
}

// 4 ------------------------------------------------------------------------
Outcome landau() {
  Rng rng(404);
  double worst = 0, worst_oracle = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_involution(rng), ap = testing::random_involution(rng);
    const auto b = testing::random_involution(rng), bp = testing::random_involution(rng);
    worst = std::max(worst, quantum::tsirelson_inequality_check(a, ap, b, bp).landau_residual.value());
    const Eigen::Matrix2cd ea = to_eigen(a.matrix()), eap = to_eigen(ap.matrix());
    const Eigen::Matrix2cd eb = to_eigen(b.matrix()), ebp = to_eigen(bp.matrix());
    const Eigen::Matrix4cd c = 0.5 * (kron(ea, eb) - kron(ea, ebp) + kron(eap, eb) + kron(eap, ebp));
    const Eigen::Matrix4cd r = c * c - Eigen::Matrix4cd::Identity() - 0.25 * kron(ea * eap - eap * ea, eb * ebp - ebp * eb);
    worst_oracle = std::max(worst_oracle, r.norm());
  }
  return {worst <= 1e-10 && worst_oracle <= 1e-10, fmt("max residual %.2e (Eigen %.2e)", worst, worst_oracle)};
}

// 5 ------------------------------------------------------------------------
Outcome separable() {
  Rng rng(505);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto mix = testing::random_separable(rng);
    const auto a = testing::random_axis(rng), ap = testing::random_axis(rng);
    const auto b = testing::random_axis(rng), bp = testing::random_axis(rng);
    worst = std::max(worst, std::abs(quantum::separable_chsh(mix, a, ap, b, bp)));
  }
  return {worst <= 2 + 1e-9, fmt("max |S| = %.12f", worst)};
}

// 6 ------------------------------------------------------------------------
Outcome smeared() {
  const auto t = quantum::tsirelson_settings();
  bool pass = true;
  double worst_quad = 0, worst_z = 0;
  std::uint64_t seed = 606;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    const quantum::SphericalCap ca(t.a, eps), cb(t.b, eps);
    const double closed = quantum::smeared_closed_form(ca, cb);
    const auto mc = testing::cap_monte_carlo(ca, cb, 10000000, seed++);
    const double z = std::abs(mc.mean - closed) / mc.std_error;
    const double dq = std::abs(quantum::smeared_correlation(ca, cb) - closed);
    worst_z = std::max(worst_z, z);
    worst_quad = std::max(worst_quad, dq);
    pass = pass && z <= 4.0 && dq <= 1e-6;
  }
  return {pass, fmt("oracle vs 10^7-sample Monte Carlo max %.2f sigma; quadrature max error %.2e", worst_z, worst_quad)};
}

// 7 ------------------------------------------------------------------------
ineq::ExactCorrelationSet brute_force(const chvm::ContextualModel& m) {
  ineq::ExactCorrelationSet c;
  for (auto s : ineq::kSettingPairs) {
    const std::size_t i = ineq::alice_column(s), j = ineq::bob_column(s);
    Rational e = 0;
    for (std::size_t l1 = 0; l1 < m.k; ++l1) {
      for (std::size_t l2 = 0; l2 < m.k; ++l2) {
        for (std::size_t u = 0; u < m.m; ++u) {
          for (std::size_t v = 0; v < m.m; ++v) {
            e += m.source[l1 * m.k + l2] * m.instrument[i][u] * m.instrument[j][v] * m.at(i, l1, u) * m.at(j, l2, v);
          }
        }
      }
    }
    c[s] = e;
  }
  return c;
}

Outcome averaging() {
  std::vector<char> ok(1000, 1);
  parallel_for(ok.size(), kThreads, [&](std::size_t n) {
    Rng rng(derive_seed(707, n));
    const auto m = testing::random_contextual(rng, 1 + rng.below(4), 1 + rng.below(3), 0.3);
    const auto full = chvm::contextual_expectations(m).correlations;
    const auto avg = chvm::averaged_expectations(chvm::bell71_average(m));
    ok[n] = full.pair == avg.pair && full.single == avg.single && full.pair == brute_force(m).pair &&
            full.chsh_max() <= 2;
  });
  const auto bad = std::count(ok.begin(), ok.end(), 0);
  return {bad == 0, std::to_string(bad) + " of 1000 models disagree or exceed 2"};
}

// 8 ------------------------------------------------------------------------
Outcome post_selection() {
  const auto m = chvm::load_model(std::string(BELLSIM_SOURCE_DIR) + "/configs/models/demo_postselection.json");
  const auto canonical = ineq::SignVariant::canonical();
  const auto full = chvm::contextual_expectations(m).correlations;
  const auto post = chvm::postselect_expectations(m);
  const auto sig = chvm::apparent_signalling(m);
  bool raw = true;
  for (const auto& row : sig.rows) {
    raw = raw && row.raw_setting_independent && row.cells[0].raw == row.cells[1].raw;
  }
  const auto events = chvm::simulate_contextual(m, 1000000, chvm::Schedule::random, 808, kThreads);
  const auto sum = chvm::summarize(events);
  const auto f = sum.full(), p = sum.postselected();
  const auto sf = sum.full_stderr(), sp = sum.postselected_stderr();
  bool mc = true;
  for (std::size_t i = 0; i < 4; ++i) {
    mc = mc && std::abs(f.pair[i] - to_double(full.pair[i])) <= 4 * sf[i];
    mc = mc && std::abs(p.pair[i] - to_double(post.correlations.pair[i])) <= 4 * sp[i];
  }
  const auto s_full = abs(full.chsh(canonical)), s_post = abs(post.correlations.chsh(canonical));
  const bool pass = full.chsh_max() <= 2 && s_post >= Rational(11, 5) && sig.any_apparent_signalling() && raw && mc;
  return {pass, "full |S| = " + to_string(s_full) + ", post-selected |S| = " + to_string(s_post) +
                    fmt(" (%.4f), Monte Carlo %s", to_double(s_post)) + (mc ? "within 4 sigma" : "OUTSIDE 4 sigma")};
}

// 9 ------------------------------------------------------------------------
Outcome collision_experiment() {
  using collision::Setting;
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = collision::analytic_expectations();
  const bool analytic = a.e_ab == 1 && a.e_ac == -1 && a.e_bc == Rational(-1, 2) && a.e_bb == Rational(1, 2);
  const auto exp = collision::run_experiment(1000000, collision::ScheduleKind::random, 909, kThreads);
  auto est = [&](Setting s) { return to_double(exp.estimates.pair[ineq::index(collision::chsh_slot(s))]); };
  auto se = [&](Setting s) { return exp.standard_error[ineq::index(collision::chsh_slot(s))]; };
  bool mc = true;
  for (Setting s : collision::kSettings) {
    const auto an = collision::analytic_expectation(collision::alice_observable(s), collision::bob_observable(s));
    mc = mc && std::abs(est(s) - to_double(an)) <= 4 * std::max(se(s), 1e-12);
  }
  const auto naive = collision::naive_boole(est(Setting::AB), est(Setting::AC), est(Setting::BC));
  const double se_diff = std::hypot(se(Setting::AB), se(Setting::AC));
  const bool eq40 = naive.violated_plus && naive.violated_minus && std::abs(naive.lhs - 2) <= 4 * std::max(se_diff, 1e-12);
  const auto res = collision::resolution_check();
  bool conserved = true;
  for (const auto& t : exp.trials) conserved = conserved && collision::conservation(exact_from_double(t.v)).exact();
  const double secs = seconds_since(t0);
  const bool pass = analytic && mc && eq40 && res.s == 2 && res.satisfied && conserved && secs < 10.0;
  return {pass, fmt("|E(AB) - E(AC)| = %.6f, S = ", naive.lhs) + to_string(res.s) +
                    fmt(", conservation on 10^6 trials, %.2f s", secs)};
}

// 10 -----------------------------------------------------------------------
Outcome gill() {
  Rng rng(1010);
  const auto sheet = testing::random_sheet(rng, 1000);
  const auto g = ineq::gill_experiment(sheet, 10000, 1011, kThreads);
  Rng small_rng(1012);
  const auto small = ineq::random_extremal_spreadsheet(small_rng, 4, ineq::SignVariant::gill());
  const auto exact = ineq::gill_exact(small);
  constexpr std::size_t kReps = 100000;
  const auto mc = ineq::gill_experiment(small, kReps, 1013, kThreads);
  auto within = [&](double observed, const Rational& p) {
    const double q = to_double(p);
    return std::abs(observed - q) <= 3 * std::max(std::sqrt(q * (1 - q) / kReps), 1e-12);
  };
  const bool pass = g.pr_above_2 <= 0.5 && within(mc.pr_at_least_2, exact.pr_at_least_2) &&
                    within(mc.pr_above_2, exact.pr_above_2);
  return {pass, fmt("Pr(S_obs > 2) = %.4f; N = 4 exact %.5f vs Monte Carlo %.5f", g.pr_above_2,
                    to_double(exact.pr_above_2), mc.pr_above_2)};
}

// 11 -----------------------------------------------------------------------
Rational grid(Rng& rng, int denominator) {
  return Rational(static_cast<std::int64_t>(rng.below(2 * denominator + 1)) - denominator, denominator);
}

Outcome fine() {
  Rng rng(1111);
  int agree = 0, feasible = 0;
  for (int n = 0; n < 1000; ++n) {
    ineq::ExactCorrelationSet c;
    for (auto& e : c.pair) e = grid(rng, n % 2 ? 10 : 6);
    if (n % 3 == 0) c.single = std::array<Rational, 4>{grid(rng, 4), grid(rng, 4), grid(rng, 4), grid(rng, 4)};
    const bool f = ineq::fine_feasibility(c).feasible;
    agree += f == ineq::chsh_conditions_hold(c);
    feasible += f;
  }
  const auto t = quantum::tsirelson_settings();
  const auto q = quantum::correlation_set_quantum(quantum::singlet_state(), t.a, -t.ap, t.b, t.bp).correlations;
  const bool quantum_infeasible = !ineq::fine_feasibility(q).feasible;
  const bool collision_feasible = ineq::fine_feasibility(collision::resolution_check().correlations).feasible;
  return {agree == 1000 && quantum_infeasible && collision_feasible,
          fmt("%.0f/1000 agree (%.0f feasible); quantum point infeasible, collision point feasible", agree, feasible)};
}

// 12 -----------------------------------------------------------------------
Outcome end_to_end() {
  const auto config = app::make_config(nlohmann::json{{"scenario", "reproduce"}, {"seed", 1}},
                                       {std::nullopt, std::nullopt, std::nullopt, kThreads});
  const auto rows = app::reproduce_rows(config);
  bool e01 = false, e02 = false, e03 = false;
  std::string s_est;
  for (const auto& r : rows) {
    if (r.id == "E01") e01 = r.pass;
    if (r.id == "E02") e02 = r.pass;
    if (r.id == "E03") {
      e03 = r.pass;
      s_est = r.computed_exact;
    }
  }
  return {e01 && e02 && e03, std::string("simple random within 3 sigma on 20 seeds: ") + (e01 ? "yes" : "no") +
                                 "; completed sheet |S| <= 2: " + (e02 ? "yes" : "no") +
                                 "; setting-dependent |S_est| = " + s_est};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"spreadsheet law", spreadsheet_law},
      {"quantum singlet E = -a.b", quantum_singlet},
      {"Tsirelson saturation and bound", tsirelson},
      {"Landau identity", landau},
      {"separable bound", separable},
      {"smeared correlation", smeared},
      {"averaging identity", averaging},
      {"post-selection violation", post_selection},
      {"collision experiment", collision_experiment},
      {"Gill experiment", gill},
      {"Fine feasibility", fine},
      {"end-to-end resolution", end_to_end},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
