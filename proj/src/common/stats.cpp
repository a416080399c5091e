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

#include "bellsim/common/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bellsim/common/error.hpp"

namespace bellsim {

double Histogram::bin_center(std::size_t i) const {
  const double w = (hi - lo) / static_cast<double>(counts.size());
  return lo + (static_cast<double>(i) + 0.5) * w;
}

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw Error("histogram needs bins >= 1 and hi > lo");
  Histogram h{lo, hi, std::vector<std::uint64_t>(bins, 0), 0, 0};
  const double scale = static_cast<double>(bins) / (hi - lo);
  for (double v : values) {
    if (v < lo) {
      ++h.below;
    } else if (v > hi) {
      ++h.above;
    } else {
      auto i = static_cast<std::size_t>((v - lo) * scale);
      ++h.counts[std::min(i, bins - 1)];
    }
  }
  return h;
}

double binomial_standard_error(double p, std::uint64_t n) {
  if (n == 0) throw Error("standard error of an empty sample");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

bool within_sigma(double x, double y, double sigma, double k, double floor) {
  return std::abs(x - y) <= k * std::max(sigma, floor);
}

}  // namespace bellsim
