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

#include "bellsim/chvm/contextual.hpp"

#include "bellsim/common/error.hpp"

namespace bellsim::chvm {

namespace {

void check_simplex(const std::vector<Rational>& p, std::size_t size, const std::string& what) {
  if (p.size() != size) throw Error(what + " has " + std::to_string(p.size()) + " entries, expected " + std::to_string(size));
  Rational total = 0;
  for (const auto& w : p) {
    if (w < 0) throw Error(what + " has a negative probability");
    total += w;
  }
  if (total != 1) throw Error(what + " sums to " + to_string(total) + ", not 1");
}

// Sums over one context (alice instrument i, bob instrument j), visiting
// every (l1, l2, li, lj) with positive weight.
template <class Visit>
void for_each_point(const ContextualModel& m, std::size_t i, std::size_t j, Visit&& visit) {
  for (std::size_t l1 = 0; l1 < m.k; ++l1) {
    for (std::size_t l2 = 0; l2 < m.k; ++l2) {
      const Rational& ps = m.source[l1 * m.k + l2];
      if (ps == 0) continue;
      for (std::size_t a = 0; a < m.m; ++a) {
        if (m.instrument[i][a] == 0) continue;
        const Rational pa = ps * m.instrument[i][a];
        for (std::size_t b = 0; b < m.m; ++b) {
          if (m.instrument[j][b] == 0) continue;
          visit(pa * m.instrument[j][b], m.at(i, l1, a), m.at(j, l2, b));
        }
      }
    }
  }
}

std::size_t pair_index(std::size_t alice, std::size_t bob) { return alice * 2 + (bob - 2); }

std::string pair_label(std::size_t alice, std::size_t bob) {
  return std::string("(") + kObservableNames[alice] + ", " + kObservableNames[bob] + ")";
}

}  // namespace

void ContextualModel::validate() const {
  if (k == 0 || m == 0) throw Error("contextual model: k and m must be at least 1");
  check_simplex(source, k * k, "source distribution");
  for (std::size_t i = 0; i < 4; ++i) {
    check_simplex(instrument[i], m, std::string("instrument distribution ") + kInstrumentNames[i]);
    if (outcome[i].size() != k * m) throw Error(std::string("outcome table ") + kObservableNames[i] + " has wrong size");
    for (auto v : outcome[i]) {
      if (v < -1 || v > 1) throw Error(std::string("outcome table ") + kObservableNames[i] + " has a value outside {-1, 0, 1}");
    }
  }
}

ContextualExpectations contextual_expectations(const ContextualModel& model) {
  model.validate();
  ContextualExpectations out;
  for (ineq::SettingPair s : ineq::kSettingPairs) {
    const std::size_t i = ineq::alice_column(s), j = ineq::bob_column(s);
    Rational e = 0, sa = 0, sb = 0;
    for_each_point(model, i, j, [&](const Rational& w, int a, int b) {
      if (a != 0 && b != 0) e += w * (a * b);
      if (a != 0) sa += w * a;
      if (b != 0) sb += w * b;
    });
    out.correlations[s] = e;
    out.single_by_context[i][j - 2] = sa;
    out.single_by_context[j][i] = sb;
  }
  std::array<Rational, 4> singles;
  for (std::size_t o = 0; o < 4; ++o) {
    if (out.single_by_context[o][0] != out.single_by_context[o][1]) {
      throw InvariantError(std::string("single ") + kObservableNames[o] + " depends on the distant setting");
    }
    singles[o] = out.single_by_context[o][0];
  }
  out.correlations.single = singles;
  return out;
}

AveragedModel bell71_average(const ContextualModel& model) {
  model.validate();
  AveragedModel avg;
  avg.k = model.k;
  avg.source = model.source;
  for (std::size_t o = 0; o < 4; ++o) {
    avg.mean[o].assign(model.k, Rational(0));
    for (std::size_t l = 0; l < model.k; ++l) {
      for (std::size_t li = 0; li < model.m; ++li) avg.mean[o][l] += model.instrument[o][li] * model.at(o, l, li);
      if (abs(avg.mean[o][l]) > 1) throw InvariantError("averaged outcome outside [-1, 1]");
    }
  }
  return avg;
}

ineq::ExactCorrelationSet averaged_expectations(const AveragedModel& model) {
  ineq::ExactCorrelationSet c;
  std::array<Rational, 4> singles{};
  for (std::size_t l1 = 0; l1 < model.k; ++l1) {
    for (std::size_t l2 = 0; l2 < model.k; ++l2) {
      const Rational& p = model.source[l1 * model.k + l2];
      if (p == 0) continue;
      for (ineq::SettingPair s : ineq::kSettingPairs) {
        c[s] += p * model.mean[ineq::alice_column(s)][l1] * model.mean[ineq::bob_column(s)][l2];
      }
      singles[0] += p * model.mean[0][l1];
      singles[1] += p * model.mean[1][l1];
      singles[2] += p * model.mean[2][l2];
      singles[3] += p * model.mean[3][l2];
    }
  }
  c.single = singles;
  return c;
}

PostselectedExpectations postselect_expectations(const ContextualModel& model) {
  model.validate();
  PostselectedExpectations out;
  for (ineq::SettingPair s : ineq::kSettingPairs) {
    const std::size_t i = ineq::alice_column(s), j = ineq::bob_column(s);
    Rational e = 0, mass = 0, sa = 0, sb = 0;
    for_each_point(model, i, j, [&](const Rational& w, int a, int b) {
      if (a == 0 || b == 0) return;
      mass += w;
      e += w * (a * b);
      sa += w * a;
      sb += w * b;
    });
    if (mass == 0) throw Error("post-selection: setting pair " + pair_label(i, j) + " retains zero mass");
    const std::size_t idx = ineq::index(s);
    out.retained_mass[idx] = mass;
    out.correlations[s] = e / mass;
    out.local[idx] = {sa / mass, sb / mass};
  }
  return out;
}

bool SignallingReport::any_apparent_signalling() const {
  for (const auto& r : rows) {
    if (r.apparent_signalling) return true;
  }
  return false;
}

SignallingReport apparent_signalling(const ContextualModel& model) {
  model.validate();
  const auto raw = contextual_expectations(model);
  SignallingReport report;
  for (std::size_t o = 0; o < 4; ++o) {
    SignallingRow& row = report.rows[o];
    row.observable = o;
    const bool alice = o < 2;
    for (std::size_t d = 0; d < 2; ++d) {
      const std::size_t distant = alice ? 2 + d : d;
      const std::size_t i = alice ? o : distant, j = alice ? distant : o;
      Rational det_sum = 0, det_mass = 0, miss_sum = 0, miss_mass = 0;
      for_each_point(model, i, j, [&](const Rational& w, int a, int b) {
        const int local = alice ? a : b;
        const int far = alice ? b : a;
        if (local == 0) return;
        if (far != 0) {
          det_sum += w * local;
          det_mass += w;
        } else {
          miss_sum += w * local;
          miss_mass += w;
        }
      });
      SignallingCell& cell = row.cells[d];
      cell.distant = distant;
      if (det_mass > 0) cell.when_detected = det_sum / det_mass;
      if (miss_mass > 0) cell.when_missed = miss_sum / miss_mass;
      cell.raw = raw.single_by_context[o][d];
    }
    row.raw_setting_independent = row.cells[0].raw == row.cells[1].raw;
    if (!row.raw_setting_independent) {
      throw InvariantError(std::string("raw marginal of ") + kObservableNames[o] + " depends on the distant setting");
    }
    auto differs = [](const std::optional<Rational>& x, const std::optional<Rational>& y) {
      return x && y && std::abs(to_double(*x - *y)) > 1e-12;
    };
    row.apparent_signalling = differs(row.cells[0].when_detected, row.cells[1].when_detected);
    for (const auto& cell : row.cells) {
      row.apparent_signalling = row.apparent_signalling || differs(cell.when_detected, cell.when_missed);
    }
  }
  return report;
}

ParameterCount parameter_count(std::size_t k, std::size_t m) {
  return {4 * k * m, 4 * (m - 1) + k * k - 1, 4 * (m - 1) + k * (k - 1) / 2};
}

ContextualModel demo_postselection_model() {
  ContextualModel model;
  model.k = 4;
  model.m = 2;
  // l1 = l2 = j, each with weight 1/4. Instrument variable 0 ("clean")
  // responds only on two of the four source values, variable 1 ("noisy")
  // always responds.
  model.source.assign(16, Rational(0));
  for (std::size_t j = 0; j < 4; ++j) model.source[j * 4 + j] = Rational(1, 4);
  for (auto& p : model.instrument) p = {Rational(9, 10), Rational(1, 10)};
  model.outcome[0] = {1, 1, -1, -1, 0, 1, 0, -1};
  model.outcome[1] = {0, 1, 0, 1, 1, -1, 1, -1};
  model.outcome[2] = {1, -1, 0, 1, 1, 1, 0, -1};
  model.outcome[3] = {0, 1, 1, -1, 0, -1, 1, 1};
  return model;
}

}  // namespace bellsim::chvm
