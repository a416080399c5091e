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

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bellsim/common/rational.hpp"
#include "bellsim/common/rng.hpp"
#include "bellsim/common/stats.hpp"
#include "bellsim/ineq/correlation.hpp"

namespace bellsim::app::detail {

using nlohmann::json;

/// Stream ids for derive_seed, one per independent part of a scenario.
enum Stream : std::uint64_t {
  kSheet = 1,
  kRandomSheets,
  kTriples,
  kExtraction,
  kPredicate,
  kAxes,
  kSeparable,
  kModels,
  kSubdomain,
  kFit,
  kSimulate,
  kCollision,
  kInvisible,
  kGill,
  kExhaustive,
  kCompletion,
};

inline std::uint64_t seed_for(std::uint64_t master, Stream s) { return derive_seed(master, s); }

/// ostringstream with round-trip precision for doubles.
class Csv {
 public:
  explicit Csv(const std::string& header) { os_ << std::setprecision(17) << header << '\n'; }
  template <class... T>
  void row(const T&... cells) {
    std::size_t i = 0;
    ((os_ << (i++ ? "," : "") << cells), ...);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

inline json correlations_json(const ineq::ExactCorrelationSet& c) { return ineq::to_json(c, ineq::SignVariant::canonical()); }
inline json correlations_json(const ineq::CorrelationSet& c) { return ineq::to_json(c, ineq::SignVariant::canonical()); }

inline json variants_json(const ineq::ExactCorrelationSet& c) {
  json j = json::object();
  for (const auto& v : ineq::SignVariant::all()) j[v.name()] = to_string(c.chsh(v));
  return j;
}

inline json histogram_json(const Histogram& h) {
  return {{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}, {"below", h.below}, {"above", h.above}};
}

inline std::string histogram_csv(const Histogram& h) {
  Csv csv("bin_center,count");
  for (std::size_t i = 0; i < h.counts.size(); ++i) csv.row(h.bin_center(i), h.counts[i]);
  return csv.str();
}

}  // namespace bellsim::app::detail
