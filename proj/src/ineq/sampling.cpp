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

#include <cmath>
#include "bellsim/ineq/sampling.hpp"

#include <numeric>
#include <string>

#include "bellsim/common/error.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/common/rng.hpp"
#include "bellsim/simd/tally.hpp"

namespace bellsim::ineq {

namespace {

void require_complete(const Spreadsheet& sheet) {
  if (sheet.has_holes()) throw Error("counterfactual row incomplete: spreadsheet has holes");
}

// Partial Fisher-Yates: the first m entries of `pool` become a uniform
// sample without replacement.
void choose(std::vector<std::size_t>& pool, std::size_t m, Rng& rng) {
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
}

PairTable project(const Spreadsheet& sheet, const std::vector<std::size_t>& rows, std::size_t m, SettingPair s) {
  PairTable t;
  t.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    t.push_row({sheet.at(rows[i], alice_column(s)), sheet.at(rows[i], bob_column(s))});
  }
  return t;
}

}  // namespace

SampleTables extract_samples(const Spreadsheet& sheet, std::size_t m, const SimpleRandom&, std::uint64_t seed) {
  require_complete(sheet);
  if (m > sheet.rows()) {
    throw Error("sample size " + std::to_string(m) + " exceeds the " + std::to_string(sheet.rows()) +
                " available rows");
  }
  SampleTables out;
  for (SettingPair s : kSettingPairs) {
    Rng rng(derive_seed(seed, index(s)));
    std::vector<std::size_t> pool(sheet.rows());
    std::iota(pool.begin(), pool.end(), 0);
    choose(pool, m, rng);
    out[index(s)] = project(sheet, pool, m, s);
  }
  return out;
}

SampleTables extract_samples(const Spreadsheet& sheet, std::size_t m, const SettingDependent& mode,
                             std::uint64_t seed) {
  require_complete(sheet);
  if (!mode.keep) throw Error("setting-dependent extraction needs a predicate");
  Rng tag_rng(derive_seed(seed, 0xa11ce));
  std::vector<double> tags(sheet.rows());
  for (double& t : tags) t = tag_rng.uniform01();
  SampleTables out;
  for (SettingPair s : kSettingPairs) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < sheet.rows(); ++i) {
      if (mode.keep(sheet.row(i), s, tags[i])) pool.push_back(i);
    }
    if (m > pool.size()) {
      throw Error("sample size " + std::to_string(m) + " exceeds the " + std::to_string(pool.size()) +
                  " rows kept for setting " + std::string(setting_name(s)) + " (of " +
                  std::to_string(sheet.rows()) + ")");
    }
    Rng rng(derive_seed(seed, index(s)));
    choose(pool, m, rng);
    out[index(s)] = project(sheet, pool, m, s);
  }
  return out;
}

SelectionPredicate coincidence_window_predicate(double window) {
  if (!(window >= 0.0 && window <= 1.0)) throw Error("coincidence window must lie in [0, 1]");
  return [window](const Row& row, SettingPair s, double tag) {
    const int product = row[alice_column(s)] * row[bob_column(s)];
    return product == SignVariant::canonical()[index(s)] || tag < window;
  };
}

ExactCorrelationSet estimate_from_tables(const SampleTables& tables) {
  ExactCorrelationSet c;
  std::array<std::uint64_t, 4> counts{};
  for (SettingPair s : kSettingPairs) {
    const PairTable& t = tables[index(s)];
    if (t.empty()) throw Error("no samples for setting " + std::string(setting_name(s)));
    auto tally = simd::pair_tally(t.column(0), t.column(1));
    if (tally.both_present != static_cast<std::int64_t>(t.rows())) throw Error("sample table has holes");
    c[s] = Rational(tally.product_sum, static_cast<std::int64_t>(t.rows()));
    counts[index(s)] = t.rows();
  }
  c.counts = counts;
  return c;
}

double chsh_standard_error(const SampleTables& tables) {
  const auto est = estimate_from_tables(tables);
  double var = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double e = to_double(est.pair[i]);
    var += (1.0 - e * e) / static_cast<double>(tables[i].rows());
  }
  return std::sqrt(var);
}

Spreadsheet complete_spreadsheet(const SampleTables& tables, std::uint64_t seed) {
  std::size_t total = 0;
  for (const auto& t : tables) total += t.rows();
  if (total == 0) throw Error("nothing to complete");
  Rng rng(seed);
  Spreadsheet sheet;
  sheet.reserve(total);
  for (SettingPair s : kSettingPairs) {
    const PairTable& t = tables[index(s)];
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.at(i, 0) == kHole || t.at(i, 1) == kHole) throw Error("sample table has holes");
      Row row{};
      for (auto& cell : row) cell = static_cast<std::int8_t>(rng.sign());
      row[alice_column(s)] = t.at(i, 0);
      row[bob_column(s)] = t.at(i, 1);
      sheet.push_row(row);
    }
  }
  return sheet;
}

namespace {

constexpr std::array<int, 4> kGillSigns = {1, 1, 1, -1};

// S from per-label sums and counts; empty labels contribute 0.
Rational gill_s(const std::array<std::int64_t, 4>& sums, const std::array<std::int64_t, 4>& counts) {
  Rational s = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (counts[k] > 0) s += Rational(kGillSigns[k] * sums[k], counts[k]);
  }
  return s;
}

}  // namespace

GillResult gill_experiment(const Spreadsheet& sheet, std::size_t replications, std::uint64_t seed,
                           unsigned threads) {
  require_complete(sheet);
  if (sheet.empty()) throw Error("spreadsheet is empty");
  if (replications == 0) throw Error("gill_experiment needs at least one replication");
  // Per-row products for each label, precomputed once.
  std::array<std::vector<std::int8_t>, 4> products;
  for (SettingPair s : kSettingPairs) {
    auto& p = products[index(s)];
    p.resize(sheet.rows());
    for (std::size_t i = 0; i < sheet.rows(); ++i) {
      p[i] = static_cast<std::int8_t>(sheet.at(i, alice_column(s)) * sheet.at(i, bob_column(s)));
    }
  }
  GillResult out;
  out.replications = replications;
  out.s_obs.resize(replications);
  std::vector<std::uint8_t> at_least(replications), above(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    Rng rng(derive_seed(seed, r));
    std::array<std::int64_t, 4> sums{}, counts{};
    for (std::size_t i = 0; i < sheet.rows(); ++i) {
      const auto label = static_cast<std::size_t>(rng.below(4));
      sums[label] += products[label][i];
      ++counts[label];
    }
    Rational s = gill_s(sums, counts);
    out.s_obs[r] = bellsim::to_double(s);
    at_least[r] = s >= 2;
    above[r] = s > 2;
  });
  const double n = static_cast<double>(replications);
  out.pr_at_least_2 = static_cast<double>(std::accumulate(at_least.begin(), at_least.end(), std::size_t{0})) / n;
  out.pr_above_2 = static_cast<double>(std::accumulate(above.begin(), above.end(), std::size_t{0})) / n;
  return out;
}

GillExact gill_exact(const Spreadsheet& sheet) {
  require_complete(sheet);
  const std::size_t n = sheet.rows();
  if (n == 0 || n > 10) throw Error("exhaustive enumeration supports 1..10 rows");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  std::uint64_t at_least = 0, above = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::array<std::int64_t, 4> sums{}, counts{};
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i, c >>= 2) {
      const auto s = static_cast<SettingPair>(c & 3u);
      sums[index(s)] += sheet.at(i, alice_column(s)) * sheet.at(i, bob_column(s));
      ++counts[index(s)];
    }
    Rational s = gill_s(sums, counts);
    at_least += s >= 2;
    above += s > 2;
  }
  const auto denom = static_cast<std::int64_t>(total);
  return {Rational(static_cast<std::int64_t>(at_least), denom), Rational(static_cast<std::int64_t>(above), denom)};
}

}  // namespace bellsim::ineq
