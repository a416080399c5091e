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

#include "bellsim/ineq/fine.hpp"

#include <cmath>
#include <vector>

namespace bellsim::ineq {

namespace {


template <class T>
bool is_zero(const T& v, double tol) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(v) <= tol;
  } else {
    (void)tol;
    return v == 0;
  }
}

template <class T>
bool is_positive(const T& v, double tol) {
  if constexpr (std::is_same_v<T, double>) {
    return v > tol;
  } else {
    (void)tol;
    return v > 0;
  }
}

// Dense phase-one simplex for { x >= 0 : M x = rhs } with one artificial
// variable per row. Returns x when the artificial cost reaches zero.
template <class T>
std::optional<std::vector<T>> phase_one(std::vector<std::vector<T>> rows, std::vector<T> rhs, std::size_t n_vars,
                                        double tol) {
  const std::size_t m = rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < T(0)) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
    }
  }
  const std::size_t cols = n_vars + m;
  // Tableau rows [coefficients | rhs]; objective row last.
  std::vector<std::vector<T>> tab(m + 1, std::vector<T>(cols + 1, T(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n_vars; ++j) tab[i][j] = rows[i][j];
    tab[i][n_vars + i] = T(1);
    tab[i][cols] = rhs[i];
    basis[i] = n_vars + i;
  }
  // Reduced costs for minimizing the sum of artificials.
  for (std::size_t j = 0; j <= cols; ++j) {
    T s = T(0);
    if (j < n_vars || j == cols) {
      for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
    }
    tab[m][j] = s;
  }
  // Bland's rule guarantees termination; the cap only guards against bugs.
  for (int iter = 0; iter < 10000; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_positive(tab[m][j], tol)) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    T best_ratio = T(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_positive(tab[i][enter], tol)) continue;
      T ratio = tab[i][cols] / tab[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    const T pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || is_zero(tab[i][enter], 0.0)) continue;
      const T factor = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }
  if (!is_zero(tab[m][cols], tol)) return std::nullopt;
  std::vector<T> x(n_vars, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n_vars) x[basis[i]] = tab[i][cols];
  }
  return x;
}

template <class T>
FeasibilityResult<T> decide(const BasicCorrelationSet<T>& corr, double tol) {
  corr.validate(std::is_same_v<T, double> ? tol : 0.0);
  std::vector<std::vector<T>> rows;
  std::vector<T> rhs;
  rows.emplace_back(16, T(1));
  rhs.push_back(T(1));
  for (SettingPair s : kSettingPairs) {
    std::vector<T> r(16);
    for (std::size_t i = 0; i < 16; ++i) {
      r[i] = T(JointDistribution4<T>::value(i, alice_column(s)) * JointDistribution4<T>::value(i, bob_column(s)));
    }
    rows.push_back(std::move(r));
    rhs.push_back(corr[s]);
  }
  if (corr.single) {
    for (std::size_t c = 0; c < 4; ++c) {
      std::vector<T> r(16);
      for (std::size_t i = 0; i < 16; ++i) r[i] = T(JointDistribution4<T>::value(i, c));
      rows.push_back(std::move(r));
      rhs.push_back((*corr.single)[c]);
    }
  }
  FeasibilityResult<T> out;
  auto x = phase_one<T>(std::move(rows), std::move(rhs), 16, tol);
  if (!x) return out;
  out.feasible = true;
  JointDistribution4<T> w;
  for (std::size_t i = 0; i < 16; ++i) {
    w.p[i] = (*x)[i];
    if constexpr (std::is_same_v<T, double>) {
      if (w.p[i] < 0) w.p[i] = 0;  // round-off below tolerance
    }
  }
  out.witness = w;
  return out;
}

template <class T>
bool conditions(const BasicCorrelationSet<T>& corr, double tol) {
  for (const SignVariant& v : SignVariant::all()) {
    if (corr.chsh(v) > T(2) + T(tol)) return false;
  }
  if (corr.single) {
    const auto& s = *corr.single;
    for (SettingPair p : kSettingPairs) {
      for (int a : {-1, 1}) {
        for (int b : {-1, 1}) {
          T cell = T(1) + T(a) * s[alice_column(p)] + T(b) * s[bob_column(p)] + T(a * b) * corr[p];
          if (cell < T(-tol)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

FeasibilityResult<Rational> fine_feasibility(const ExactCorrelationSet& corr) { return decide(corr, 0.0); }

FeasibilityResult<double> fine_feasibility(const CorrelationSet& corr, double tol) { return decide(corr, tol); }

bool chsh_conditions_hold(const ExactCorrelationSet& corr) { return conditions(corr, 0.0); }

bool chsh_conditions_hold(const CorrelationSet& corr, double tol) { return conditions(corr, tol); }

}  // namespace bellsim::ineq
