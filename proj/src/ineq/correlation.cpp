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

#include "bellsim/ineq/correlation.hpp"

#include <algorithm>

namespace bellsim::ineq {

namespace {

constexpr std::array<std::string_view, 4> kSettingNames = {"AB", "ABp", "ApB", "ApBp"};
constexpr std::array<const char*, 4> kPairKeys = {"e_ab", "e_abp", "e_apb", "e_apbp"};
constexpr std::array<const char*, 4> kSingleKeys = {"e_a", "e_ap", "e_b", "e_bp"};

}  // namespace

std::string_view setting_name(SettingPair s) { return kSettingNames[index(s)]; }

SettingPair parse_setting(std::string_view name) {
  auto it = std::find(kSettingNames.begin(), kSettingNames.end(), name);
  if (it == kSettingNames.end()) throw Error("unknown setting pair '" + std::string(name) + "'");
  return static_cast<SettingPair>(it - kSettingNames.begin());
}

SignVariant::SignVariant(std::array<int, 4> signs) : signs_(signs) {
  int product = 1;
  for (int s : signs) {
    if (s != 1 && s != -1) throw Error("sign variant entries must be +1 or -1");
    product *= s;
  }
  if (product != -1) throw Error("sign variant must contain an odd number of minus signs");
}

std::array<SignVariant, 8> SignVariant::all() {
  std::array<SignVariant, 8> out = {canonical(), canonical(), canonical(), canonical(),
                                    canonical(), canonical(), canonical(), canonical()};
  std::size_t n = 0;
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::array<int, 4> s{};
    int minus = 0;
    for (int i = 0; i < 4; ++i) {
      s[i] = (bits >> (3 - i)) & 1u ? -1 : 1;
      minus += s[i] < 0;
    }
    if (minus % 2 == 1) out[n++] = SignVariant(s);
  }
  return out;
}

std::string SignVariant::name() const {
  std::string s;
  for (int v : signs_) s.push_back(v > 0 ? '+' : '-');
  return s;
}

SignVariant SignVariant::parse(std::string_view name) {
  if (name == "canonical") return canonical();
  if (name == "gill") return gill();
  if (name.size() != 4) throw Error("sign variant '" + std::string(name) + "' must be four of '+'/'-'");
  std::array<int, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (name[i] == '+') {
      s[i] = 1;
    } else if (name[i] == '-') {
      s[i] = -1;
    } else {
      throw Error("sign variant '" + std::string(name) + "' must be four of '+'/'-'");
    }
  }
  return SignVariant(s);
}

CorrelationSet to_double(const ExactCorrelationSet& c) {
  CorrelationSet out;
  for (std::size_t i = 0; i < 4; ++i) out.pair[i] = bellsim::to_double(c.pair[i]);
  if (c.single) {
    std::array<double, 4> s{};
    for (std::size_t i = 0; i < 4; ++i) s[i] = bellsim::to_double((*c.single)[i]);
    out.single = s;
  }
  out.counts = c.counts;
  return out;
}

ExactCorrelationSet to_exact(const CorrelationSet& c) {
  ExactCorrelationSet out;
  for (std::size_t i = 0; i < 4; ++i) out.pair[i] = exact_from_double(c.pair[i]);
  if (c.single) {
    std::array<Rational, 4> s;
    for (std::size_t i = 0; i < 4; ++i) s[i] = exact_from_double((*c.single)[i]);
    out.single = s;
  }
  out.counts = c.counts;
  return out;
}

nlohmann::json to_json(const CorrelationSet& c, const SignVariant& v) {
  nlohmann::json j;
  for (std::size_t i = 0; i < 4; ++i) j[kPairKeys[i]] = c.pair[i];
  if (c.single) {
    for (std::size_t i = 0; i < 4; ++i) j[kSingleKeys[i]] = (*c.single)[i];
  }
  if (c.counts) {
    nlohmann::json counts;
    for (std::size_t i = 0; i < 4; ++i) counts[std::string(kSettingNames[i])] = (*c.counts)[i];
    j["counts"] = counts;
  }
  j["variant"] = v.name();
  j["S"] = c.chsh(v);
  return j;
}

nlohmann::json to_json(const ExactCorrelationSet& c, const SignVariant& v) {
  nlohmann::json j = to_json(to_double(c), v);
  nlohmann::json exact;
  for (std::size_t i = 0; i < 4; ++i) exact[kPairKeys[i]] = to_string(c.pair[i]);
  if (c.single) {
    for (std::size_t i = 0; i < 4; ++i) exact[kSingleKeys[i]] = to_string((*c.single)[i]);
  }
  exact["S"] = to_string(c.chsh(v));
  j["exact"] = exact;
  return j;
}

CorrelationSet correlation_set_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("correlation set: expected a JSON object");
  static const std::array<std::string, 4> kCountKeys = {"AB", "ABp", "ApB", "ApBp"};
  for (const auto& [key, value] : j.items()) {
    bool known = key == "counts" || key == "variant" || key == "S" || key == "exact";
    for (std::size_t i = 0; i < 4; ++i) known = known || key == kPairKeys[i] || key == kSingleKeys[i];
    if (!known) throw Error("correlation set: unknown key '/" + key + "'");
  }
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw Error(std::string("correlation set: '/") + key + "' must be a number");
    }
    return j.at(key).get<double>();
  };
  CorrelationSet c;
  for (std::size_t i = 0; i < 4; ++i) c.pair[i] = number(kPairKeys[i]);
  bool any_single = false;
  for (const char* k : kSingleKeys) any_single = any_single || j.contains(k);
  if (any_single) {
    std::array<double, 4> s{};
    for (std::size_t i = 0; i < 4; ++i) s[i] = number(kSingleKeys[i]);
    c.single = s;
  }
  if (j.contains("counts")) {
    std::array<std::uint64_t, 4> n{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& counts = j.at("counts");
      if (!counts.contains(kCountKeys[i]) || !counts.at(kCountKeys[i]).is_number_unsigned()) {
        throw Error("correlation set: '/counts/" + kCountKeys[i] + "' must be a non-negative integer");
      }
      n[i] = counts.at(kCountKeys[i]).get<std::uint64_t>();
    }
    c.counts = n;
  }
  c.validate(1e-12);
  return c;
}

}  // namespace bellsim::ineq
