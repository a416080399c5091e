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

#include "bellsim/quantum/random.hpp"

#include <cmath>

namespace bellsim::quantum {

UnitVector3 random_axis(Rng& rng) {
  for (;;) {
    const double x = rng.normal(), y = rng.normal(), z = rng.normal();
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1e-6) return UnitVector3::normalized(x / n, y / n, z / n);
  }
}

Observable2 random_involution(Rng& rng) {
  switch (rng.below(10)) {
    case 0: return Observable2::identity();
    case 1: return Observable2(Complex(-1.0) * Matrix2::identity());
    default: return spin_operator(random_axis(rng));
  }
}

Matrix2 random_qubit_density(Rng& rng) {
  const auto dir = random_axis(rng);
  const double r = std::cbrt(rng.uniform01());
  Matrix2 m = Matrix2::identity();
  m += Complex(r * dir.x()) * pauli_x();
  m += Complex(r * dir.y()) * pauli_y();
  m += Complex(r * dir.z()) * pauli_z();
  return Complex(0.5) * m;
}

SeparableMixture random_separable(Rng& rng) {
  const std::size_t n = 1 + rng.below(5);
  std::vector<double> w(n);
  double total = 0;
  for (auto& x : w) total += (x = -std::log(rng.uniform_open_closed()));
  std::vector<SeparableMixture::Component> parts;
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = i + 1 == n ? 1.0 - acc : w[i] / total;
    acc += wi;
    parts.push_back({wi, random_qubit_density(rng), random_qubit_density(rng)});
  }
  return SeparableMixture(std::move(parts));
}

}  // namespace bellsim::quantum
