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

#include "bellsim/common/rng.hpp"
#include "bellsim/quantum/chsh_operator.hpp"

namespace bellsim::quantum {

/// Uniform on the sphere (normalized Gaussian triple).
UnitVector3 random_axis(Rng& rng);

/// Spectrum in {-1, +1}: a spin operator along a random axis, or +-I one
/// time in ten each.
Observable2 random_involution(Rng& rng);

/// (I + r . sigma)/2 with r uniform in the unit ball.
Matrix2 random_qubit_density(Rng& rng);

/// One to five product components with exponential weights.
SeparableMixture random_separable(Rng& rng);

}  // namespace bellsim::quantum
