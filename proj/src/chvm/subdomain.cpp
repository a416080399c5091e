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

#include "bellsim/chvm/subdomain.hpp"

#include "bellsim/common/error.hpp"

namespace bellsim::chvm {

void SubdomainModel::validate() const {
  if (p.empty()) throw Error("subdomain model: Lambda is empty");
  Rational total = 0;
  for (const auto& w : p) {
    if (w < 0) throw Error("subdomain model: negative probability");
    total += w;
  }
  if (total != 1) throw Error("subdomain model: probabilities do not sum to 1");
  for (std::size_t i = 0; i < 4; ++i) {
    if (outcome[i].size() != p.size() || subset[i].size() != p.size()) {
      throw Error("subdomain model: table " + std::to_string(i) + " has wrong size");
    }
    for (auto v : outcome[i]) {
      if (v != 1 && v != -1) throw Error("subdomain model: outcomes must be -1 or +1");
    }
  }
}

const char* regime_name(SubdomainRegime r) {
  switch (r) {
    case SubdomainRegime::full: return "full";
    case SubdomainRegime::empty_intersection: return "empty_intersection";
    case SubdomainRegime::intermediate: return "intermediate";
  }
  return "?";
}

LarssonGillResult larsson_gill_bound(const SubdomainModel& model) {
  model.validate();
  LarssonGillResult r;
  bool all_full = true;
  bool intersection_empty = true;
  for (std::size_t l = 0; l < model.p.size(); ++l) {
    const bool in_all = model.subset[0][l] && model.subset[1][l] && model.subset[2][l] && model.subset[3][l];
    all_full = all_full && in_all;
    if (in_all) {
      r.delta += model.p[l];
      intersection_empty = false;
    }
  }
  for (ineq::SettingPair s : ineq::kSettingPairs) {
    const std::size_t i = ineq::index(s);
    Rational mass = 0, e = 0;
    for (std::size_t l = 0; l < model.p.size(); ++l) {
      if (!model.subset[i][l]) continue;
      mass += model.p[l];
      e += model.p[l] * (model.outcome[ineq::alice_column(s)][l] * model.outcome[ineq::bob_column(s)][l]);
    }
    if (mass == 0) throw Error("subdomain for setting pair " + std::string(ineq::setting_name(s)) + " has zero mass");
    r.conditional[s] = e / mass;
  }
  r.s = r.conditional.chsh_abs();
  r.bound = 4 - 2 * r.delta;
  r.regime = all_full ? SubdomainRegime::full
                      : (intersection_empty ? SubdomainRegime::empty_intersection : SubdomainRegime::intermediate);
  r.within_bound = r.s <= r.bound;
  if (r.regime == SubdomainRegime::full && (r.bound != 2 || r.s > 2)) {
    throw InvariantError("subdomains equal to Lambda must reduce to the CHSH bound 2");
  }
  if (r.regime == SubdomainRegime::empty_intersection && (r.bound != 4 || r.s > 4)) {
    throw InvariantError("empty intersection must give the no-signalling bound 4");
  }
  return r;
}

}  // namespace bellsim::chvm
