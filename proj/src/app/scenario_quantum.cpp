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

#include "bellsim/app/scenarios.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/ineq/fine.hpp"
#include "bellsim/quantum/chsh_operator.hpp"
#include "bellsim/quantum/random.hpp"
#include "util.hpp"

namespace bellsim::app {

using namespace detail;
using nlohmann::json;

namespace {

quantum::UnitVector3 axis_param(const json& p, const char* key, json& warnings) {
  bool adjusted = false;
  try {
    auto v = quantum::UnitVector3::parse(p[key].get<std::string>(), &adjusted);
    if (adjusted) warnings.push_back(std::string("axis '/params/") + key + "' normalized");
    return v;
  } catch (const Error& e) {
    throw UsageError(std::string("params: '/params/") + key + "' " + e.what());
  }
}

json axis_json(const quantum::UnitVector3& v) { return v.components(); }

}  // namespace

void run_quantum(const ScenarioConfig& config, Report& report) {
  const auto& p = config.params;
  auto& out = report.results();
  json warnings = json::array();

  const auto b = axis_param(p, "b", warnings);
  const auto bp = axis_param(p, "bp", warnings);
  const bool tsirelson_a = p["a"] == "tsirelson", tsirelson_ap = p["ap"] == "tsirelson";
  std::optional<quantum::ChshSettings> derived;
  if (tsirelson_a || tsirelson_ap) {
    try {
      derived = quantum::tsirelson_settings(b, bp);
    } catch (const Error& e) {
      throw UsageError(std::string("params: '/params/b', '/params/bp' ") + e.what());
    }
  }
  const auto a = tsirelson_a ? derived->a : axis_param(p, "a", warnings);
  const auto ap = tsirelson_ap ? derived->ap : axis_param(p, "ap", warnings);
  out["settings"] = {{"a", axis_json(a)}, {"ap", axis_json(ap)}, {"b", axis_json(b)}, {"bp", axis_json(bp)}};

  const auto psi = quantum::singlet_state();
  const auto qc = quantum::correlation_set_quantum(psi, a, ap, b, bp);
  const auto& c = qc.correlations;
  json tables = json::object();
  for (auto s : ineq::kSettingPairs) {
    const auto& t = qc.tables[ineq::index(s)];
    tables[std::string(ineq::setting_name(s))] = {{"++", t[0][0]}, {"+-", t[0][1]}, {"-+", t[1][0]}, {"--", t[1][1]}};
  }
  const double s_abs = c.chsh_abs();
  out["singlet"] = {{"correlations", correlations_json(c)},
                    {"outcome_tables", tables},
                    {"s_canonical", c.chsh(ineq::SignVariant::canonical())},
                    {"s_abs", s_abs},
                    {"s_max_over_variants", c.chsh_max()},
                    {"tsirelson_bound", 2 * std::sqrt(2.0)}};
  if (tsirelson_a && tsirelson_ap) {
    report.check("S = 2 sqrt 2 at the Tsirelson settings (to 1e-10)", std::abs(s_abs - 2 * std::sqrt(2.0)) <= 1e-10,
                 std::to_string(s_abs));
  }
  report.check("S <= 2 sqrt 2 at the chosen settings", c.chsh_max() <= 2 * std::sqrt(2.0) + 1e-10);

  const auto sa = quantum::spin_operator(a), sap = quantum::spin_operator(ap);
  const auto sb = quantum::spin_operator(b), sbp = quantum::spin_operator(bp);
  const double op_norm = quantum::chsh_operator(sa, sap, sb, sbp).norm();
  const auto ts = quantum::tsirelson_inequality_check(sa, sap, sb, sbp);
  out["operator"] = {{"norm", op_norm}, {"psd_gap", ts.psd_gap}, {"landau_residual", *ts.landau_residual}};
  report.check("||S|| <= 2 sqrt 2", op_norm <= 2 * std::sqrt(2.0) + 1e-9, std::to_string(op_norm));
  report.check("4I + [A,A'](x)[B,B'] - S^2 is positive semidefinite", ts.psd_gap >= -1e-9);
  report.check("Landau identity residual <= 1e-10", *ts.landau_residual <= 1e-10);

  // Random singlet pairs against E = -a.b.
  const auto n_pairs = p["random_pairs"].get<std::size_t>();
  double worst_pair = 0, worst_single = 0;
  {
    Rng rng(seed_for(config.seed, kAxes));
    for (std::size_t i = 0; i < n_pairs; ++i) {
      const auto x = quantum::random_axis(rng), y = quantum::random_axis(rng);
      const auto cov = quantum::conditional_covariance(psi, quantum::spin_operator(x), quantum::spin_operator(y));
      worst_pair = std::max(worst_pair, std::abs(cov.e_ab + x.dot(y)));
      worst_single = std::max({worst_single, std::abs(cov.e_a), std::abs(cov.e_b)});
    }
  }
  out["random_pairs"] = {{"count", n_pairs}, {"max_deviation_from_minus_a_dot_b", worst_pair},
                         {"max_abs_single", worst_single}};
  report.check("singlet E(AB) = -a.b on random pairs (to 1e-12)", worst_pair <= 1e-12);
  report.check("singlet singles vanish on random axes (to 1e-12)", worst_single <= 1e-12);

  // Random +-1 observables.
  const auto n_quads = p["random_quadruples"].get<std::size_t>();
  std::vector<quantum::TsirelsonCheck> quads(n_quads);
  std::vector<double> norms(n_quads);
  parallel_for(n_quads, config.threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed_for(config.seed, kAxes), 1000000 + i));
    const auto qa = quantum::random_involution(rng), qap = quantum::random_involution(rng);
    const auto qb = quantum::random_involution(rng), qbp = quantum::random_involution(rng);
    norms[i] = quantum::chsh_operator(qa, qap, qb, qbp).norm();
    quads[i] = quantum::tsirelson_inequality_check(qa, qap, qb, qbp);
  });
  double max_norm = 0, min_gap = INFINITY, max_landau = 0;
  for (std::size_t i = 0; i < n_quads; ++i) {
    max_norm = std::max(max_norm, norms[i]);
    min_gap = std::min(min_gap, quads[i].psd_gap);
    max_landau = std::max(max_landau, quads[i].landau_residual.value_or(0.0));
  }
  out["random_quadruples"] = {{"count", n_quads},
                              {"max_norm", max_norm},
                              {"min_psd_gap", min_gap},
                              {"max_landau_residual", max_landau}};
  report.check("||S|| <= 2 sqrt 2 + 1e-9 on random observables", max_norm <= 2 * std::sqrt(2.0) + 1e-9);
  report.check("Landau residual <= 1e-10 on random observables", max_landau <= 1e-10);

  const auto n_sep = p["separable_mixtures"].get<std::size_t>();
  std::vector<double> sep(n_sep);
  parallel_for(n_sep, config.threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed_for(config.seed, kSeparable), i));
    const auto mix = quantum::random_separable(rng);
    const auto x = quantum::random_axis(rng), xp = quantum::random_axis(rng);
    const auto y = quantum::random_axis(rng), yp = quantum::random_axis(rng);
    sep[i] = std::abs(quantum::separable_chsh(mix, x, xp, y, yp));
  });
  const double sep_max = n_sep ? *std::max_element(sep.begin(), sep.end()) : 0.0;
  out["separable"] = {{"count", n_sep}, {"max_abs_s", sep_max}, {"bound", 2}};
  report.check("separable states give |S| <= 2 + 1e-9", sep_max <= 2 + 1e-9, std::to_string(sep_max));

  Csv smeared("epsilon,aligned_quadrature,aligned_closed_form,settings_quadrature,settings_closed_form");
  json smeared_json = json::array();
  double worst_smear = 0;
  for (const auto& e : p["epsilons"]) {
    const double eps = e.get<double>();
    const quantum::SphericalCap ca(a, eps), cb(b, eps), ca_same(a, eps);
    const double q_aligned = quantum::smeared_correlation(ca, ca_same);
    const double f_aligned = quantum::smeared_closed_form(ca, ca_same);
    const double q = quantum::smeared_correlation(ca, cb), f = quantum::smeared_closed_form(ca, cb);
    worst_smear = std::max({worst_smear, std::abs(q_aligned - f_aligned), std::abs(q - f)});
    smeared.row(eps, q_aligned, f_aligned, q, f);
    smeared_json.push_back({{"epsilon", eps},
                            {"aligned", {{"quadrature", q_aligned}, {"closed_form", f_aligned}}},
                            {"settings", {{"quadrature", q}, {"closed_form", f}}}});
  }
  report.write_file("smeared.csv", smeared.str());
  out["smeared"] = smeared_json;
  report.check("smeared correlation quadrature matches the closed form (to 1e-6)", worst_smear <= 1e-6);

  const auto feasible = ineq::fine_feasibility(c);
  out["singlet"]["fine_feasible"] = feasible.feasible;
  if (!warnings.empty()) out["warnings"] = warnings;
}

}  // namespace bellsim::app
