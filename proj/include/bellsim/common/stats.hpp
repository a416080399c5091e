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

#include <cstdint>
#include <vector>

namespace bellsim {

/// Equal-width bins over [lo, hi]; values outside are counted in
/// `below`/`above`, the right edge belongs to the last bin.
struct Histogram {
  double lo = 0;
  double hi = 1;
  std::vector<std::uint64_t> counts;
  std::uint64_t below = 0;
  std::uint64_t above = 0;

  double bin_center(std::size_t i) const;
};

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, std::size_t bins);

/// sqrt(p (1 - p) / n) for an observed frequency p out of n trials.
double binomial_standard_error(double p, std::uint64_t n);

/// |x - y| <= k sigma, with sigma floored at `floor` so that exact matches
/// of degenerate (zero-variance) cases still compare.
bool within_sigma(double x, double y, double sigma, double k, double floor = 1e-12);

}  // namespace bellsim
