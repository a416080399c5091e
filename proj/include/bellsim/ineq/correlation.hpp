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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bellsim/common/error.hpp"
#include "bellsim/common/rational.hpp"

namespace bellsim::ineq {

/// The four experiments of a CHSH test, in the order (AB, AB', A'B, A'B').
enum class SettingPair : std::uint8_t { ab = 0, abp = 1, apb = 2, apbp = 3 };

inline constexpr std::array<SettingPair, 4> kSettingPairs = {SettingPair::ab, SettingPair::abp, SettingPair::apb,
                                                              SettingPair::apbp};

constexpr std::size_t index(SettingPair s) { return static_cast<std::size_t>(s); }
/// Spreadsheet column of Alice's observable (0 = A, 1 = A').
constexpr std::size_t alice_column(SettingPair s) { return index(s) / 2; }
/// Spreadsheet column of Bob's observable (2 = B, 3 = B').
constexpr std::size_t bob_column(SettingPair s) { return 2 + index(s) % 2; }

std::string_view setting_name(SettingPair s);
SettingPair parse_setting(std::string_view name);

/// Signs applied to (E(AB), E(AB'), E(A'B), E(A'B')). A CHSH expression has
/// an odd number of minus signs, so there are exactly eight of them.
class SignVariant {
 public:
  /// Throws unless every sign is +-1 and their product is -1.
  explicit SignVariant(std::array<int, 4> signs);

  /// (+, -, +, +): |E(AB) - E(AB') + E(A'B) + E(A'B')| <= 2.
  static SignVariant canonical() { return SignVariant({1, -1, 1, 1}); }
  /// (+, +, +, -): the form used by the finite-sample experiment.
  static SignVariant gill() { return SignVariant({1, 1, 1, -1}); }
  static std::array<SignVariant, 8> all();

  int operator[](std::size_t i) const { return signs_[i]; }
  const std::array<int, 4>& signs() const { return signs_; }

  /// e.g. "+-++".
  std::string name() const;
  static SignVariant parse(std::string_view name);

  friend bool operator==(const SignVariant&, const SignVariant&) = default;

 private:
  std::array<int, 4> signs_;
};

/// Four pairwise expectations, optional singles E(A), E(A'), E(B), E(B')
/// and optional per-setting sample counts. Population values (analytic
/// models) carry no counts.
template <class T>
struct BasicCorrelationSet {
  std::array<T, 4> pair{};
  std::optional<std::array<T, 4>> single;
  std::optional<std::array<std::uint64_t, 4>> counts;

  const T& operator[](SettingPair s) const { return pair[index(s)]; }
  T& operator[](SettingPair s) { return pair[index(s)]; }

  T chsh(const SignVariant& v) const {
    T s = T(0);
    for (std::size_t i = 0; i < 4; ++i) s += T(v[i]) * pair[i];
    return s;
  }

  /// |E(AB) - E(AB')| + |E(A'B) + E(A'B')|, the largest of the four
  /// variants with signs (s, -s, t, t).
  T chsh_abs() const {
    using std::abs;
    return abs(pair[0] - pair[1]) + abs(pair[2] + pair[3]);
  }

  /// max |S| over all eight sign variants.
  T chsh_max() const {
    T best = T(0);
    for (const auto& v : SignVariant::all()) {
      using std::abs;
      T s = abs(chsh(v));
      if (s > best) best = s;
    }
    return best;
  }

  /// Throws if any expectation is outside [-1, 1] (beyond `tol` for floats).
  void validate(double tol = 0.0) const;
};

using CorrelationSet = BasicCorrelationSet<double>;
using ExactCorrelationSet = BasicCorrelationSet<Rational>;

using bellsim::to_double;
CorrelationSet to_double(const ExactCorrelationSet& c);
ExactCorrelationSet to_exact(const CorrelationSet& c);

/// Serialized form: the eight expectations, counts, the variant name and S.
/// Exact sets also carry "exact" with "p/q" strings.
nlohmann::json to_json(const CorrelationSet& c, const SignVariant& v);
nlohmann::json to_json(const ExactCorrelationSet& c, const SignVariant& v);
CorrelationSet correlation_set_from_json(const nlohmann::json& j);

/// 16 weights over (a, a', b, b') in {-1, +1}^4. Index bit 3 is a, bit 2 a',
/// bit 1 b, bit 0 b'; a set bit means -1.
template <class T>
struct JointDistribution4 {
  std::array<T, 16> p{};

  static constexpr std::size_t index_of(int a, int ap, int b, int bp) {
    return (a < 0 ? 8u : 0u) | (ap < 0 ? 4u : 0u) | (b < 0 ? 2u : 0u) | (bp < 0 ? 1u : 0u);
  }
  /// Value (+-1) of column c (0..3 for a, a', b, b') in row type i.
  static constexpr int value(std::size_t i, std::size_t c) { return (i >> (3 - c)) & 1u ? -1 : 1; }

  T total() const {
    T s = T(0);
    for (const T& w : p) s += w;
    return s;
  }

  T expectation(std::size_t c1, std::size_t c2) const {
    T s = T(0);
    for (std::size_t i = 0; i < 16; ++i) s += T(value(i, c1) * value(i, c2)) * p[i];
    return s;
  }

  T single(std::size_t c) const {
    T s = T(0);
    for (std::size_t i = 0; i < 16; ++i) s += T(value(i, c)) * p[i];
    return s;
  }

  /// E(A A' B B'), the counterfactual four-fold product.
  T four_way() const {
    T s = T(0);
    for (std::size_t i = 0; i < 16; ++i) s += T(value(i, 0) * value(i, 1) * value(i, 2) * value(i, 3)) * p[i];
    return s;
  }

  BasicCorrelationSet<T> marginals() const {
    BasicCorrelationSet<T> c;
    for (SettingPair s : {SettingPair::ab, SettingPair::abp, SettingPair::apb, SettingPair::apbp}) {
      c[s] = expectation(index(s) / 2, 2 + index(s) % 2);
    }
    c.single = std::array<T, 4>{single(0), single(1), single(2), single(3)};
    return c;
  }
};

template <class T>
void BasicCorrelationSet<T>::validate(double tol) const {
  auto check = [&](const T& v, const char* what) {
    if (v > T(1) + T(tol) || v < T(-1) - T(tol)) {
      throw Error(std::string("expectation ") + what + " outside [-1, 1]");
    }
  };
  static constexpr std::array<const char*, 4> kPairNames = {"E(AB)", "E(AB')", "E(A'B)", "E(A'B')"};
  static constexpr std::array<const char*, 4> kSingleNames = {"E(A)", "E(A')", "E(B)", "E(B')"};
  for (std::size_t i = 0; i < 4; ++i) check(pair[i], kPairNames[i]);
  if (single) {
    for (std::size_t i = 0; i < 4; ++i) check((*single)[i], kSingleNames[i]);
  }
}

}  // namespace bellsim::ineq
