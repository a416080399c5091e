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

#include "bellsim/chvm/lrhvm.hpp"

#include "bellsim/common/error.hpp"

namespace bellsim::chvm {

void LrhvmModel::validate() const {
  if (p.empty()) throw Error("LRHVM: Lambda is empty");
  Rational total = 0;
  for (const auto& w : p) {
    if (w < 0) throw Error("LRHVM: negative probability");
    total += w;
  }
  if (total != 1) throw Error("LRHVM: probabilities sum to " + to_string(total) + ", not 1");
  for (std::size_t c = 0; c < 4; ++c) {
    if (outcome[c].size() != p.size()) throw Error("LRHVM: outcome function " + std::to_string(c) + " has wrong size");
    for (auto v : outcome[c]) {
      if (v != 1 && v != -1) throw Error("LRHVM: outcomes must be -1 or +1");
    }
  }
}

ineq::ExactCorrelationSet lrhvm_expectations(const LrhvmModel& model) {
  model.validate();
  ineq::ExactCorrelationSet c;
  std::array<Rational, 4> singles{};
  for (std::size_t l = 0; l < model.size(); ++l) {
    if (model.p[l] == 0) continue;
    for (ineq::SettingPair s : ineq::kSettingPairs) {
      c[s] += model.p[l] * (model.outcome[ineq::alice_column(s)][l] * model.outcome[ineq::bob_column(s)][l]);
    }
    for (std::size_t col = 0; col < 4; ++col) singles[col] += model.p[l] * model.outcome[col][l];
  }
  c.single = singles;
  for (const auto& v : ineq::SignVariant::all()) {
    if (abs(c.chsh(v)) > 2) throw InvariantError("LRHVM expectations exceed the CHSH bound");
  }
  return c;
}

CounterfactualTable lrhvm_counterfactual_table(const LrhvmModel& model) {
  model.validate();
  CounterfactualTable t;
  for (std::size_t l = 0; l < model.size(); ++l) {
    const auto& o = model.outcome;
    t.joint.p[ineq::JointDistribution4<Rational>::index_of(o[0][l], o[1][l], o[2][l], o[3][l])] += model.p[l];
  }
  t.four_way = t.joint.four_way();
  return t;
}

}  // namespace bellsim::chvm
