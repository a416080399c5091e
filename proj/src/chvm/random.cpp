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

#include "bellsim/chvm/random.hpp"

namespace bellsim::chvm {

std::vector<Rational> random_distribution(Rng& rng, std::size_t n, double zero_rate) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = rng.uniform01() < zero_rate ? 0 : 1 + static_cast<std::int64_t>(rng.below(12));
    total += x;
  }
  if (total == 0) {
    w[rng.below(n)] = 1;
    total = 1;
  }
  std::vector<Rational> p;
  p.reserve(n);
  for (auto x : w) p.emplace_back(x, total);
  return p;
}

LrhvmModel random_lrhvm(Rng& rng, std::size_t size) {
  LrhvmModel m;
  m.p = random_distribution(rng, size, 0.2);
  for (auto& o : m.outcome) {
    o.resize(size);
    for (auto& v : o) v = static_cast<std::int8_t>(rng.sign());
  }
  return m;
}

ContextualModel random_contextual(Rng& rng, std::size_t k, std::size_t m, double outcome_zero_rate) {
  ContextualModel model;
  model.k = k;
  model.m = m;
  model.source = random_distribution(rng, k * k, 0.3);
  for (std::size_t o = 0; o < 4; ++o) {
    model.instrument[o] = random_distribution(rng, m, 0.2);
    model.outcome[o].resize(k * m);
    for (auto& v : model.outcome[o]) {
      v = static_cast<std::int8_t>(rng.uniform01() < outcome_zero_rate ? 0 : rng.sign());
    }
  }
  return model;
}

SubdomainModel random_subdomain(Rng& rng, std::size_t size, double membership) {
  SubdomainModel m;
  m.p = random_distribution(rng, size);
  for (std::size_t i = 0; i < 4; ++i) {
    m.outcome[i].resize(size);
    for (auto& v : m.outcome[i]) v = static_cast<std::int8_t>(rng.sign());
    m.subset[i].resize(size);
    for (std::size_t l = 0; l < size; ++l) m.subset[i][l] = rng.uniform01() < membership;
    m.subset[i][rng.below(size)] = true;
  }
  return m;
}

}  // namespace bellsim::chvm
