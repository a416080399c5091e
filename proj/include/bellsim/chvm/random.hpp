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

#include "bellsim/chvm/contextual.hpp"
#include "bellsim/chvm/lrhvm.hpp"
#include "bellsim/chvm/subdomain.hpp"
#include "bellsim/common/rng.hpp"

namespace bellsim::chvm {

/// Integer weights 1..12 over a common denominator (so rational sums stay
/// small), each blanked with probability `zero_rate`; at least one stays
/// positive.
std::vector<Rational> random_distribution(Rng& rng, std::size_t n, double zero_rate = 0.0);

LrhvmModel random_lrhvm(Rng& rng, std::size_t size);

/// Outcome cells are 0 with probability `outcome_zero_rate`, else fair +-1.
ContextualModel random_contextual(Rng& rng, std::size_t k, std::size_t m, double outcome_zero_rate);

/// Each point joins each subset with probability `membership`; every subset
/// gets at least one point.
SubdomainModel random_subdomain(Rng& rng, std::size_t size, double membership);

}  // namespace bellsim::chvm
