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

#include <vector>

#include "bellsim/quantum/observables.hpp"

namespace bellsim::quantum {

/// S = A(x)B - A(x)B' + A'(x)B + A'(x)B' (signs from `variant`). Each input
/// must have operator norm <= 1 + 1e-9.
Operator4 chsh_operator(const Observable2& a, const Observable2& ap, const Observable2& b, const Observable2& bp,
                        const ineq::SignVariant& variant = ineq::SignVariant::canonical());

struct TsirelsonCheck {
  Matrix4 lhs;          // S^2
  Matrix4 rhs;          // 4I + [A, A'] (x) [B, B']
  double psd_gap = 0;   // smallest eigenvalue of rhs - lhs
  bool involutions = false;           // all four square to I (to 1e-10)
  std::optional<double> landau_residual;  // || C^2 - I - [A,A'](x)[B,B']/4 ||_F when involutions
};

/// Operator form of the quantum CHSH bound for the canonical variant.
TsirelsonCheck tsirelson_inequality_check(const Observable2& a, const Observable2& ap, const Observable2& b,
                                          const Observable2& bp);

/// Convex combination of product states rho1 (x) rho2.
class SeparableMixture {
 public:
  struct Component {
    double weight;
    Matrix2 rho1;
    Matrix2 rho2;
  };

  /// Validates each factor as a qubit density matrix and the weights as a
  /// probability vector (sum 1 to 1e-12).
  explicit SeparableMixture(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  QuantumState state() const;

 private:
  std::vector<Component> components_;
};

/// Canonical CHSH value of a separable state with spin observables.
double separable_chsh(const SeparableMixture& mixture, const UnitVector3& a, const UnitVector3& ap,
                      const UnitVector3& b, const UnitVector3& bp);

/// Cap O = {u on S^2 : |1 - u . axis| <= epsilon}, epsilon in (0, 2].
struct SphericalCap {
  SphericalCap(UnitVector3 axis, double epsilon);
  UnitVector3 axis;
  double epsilon;
};

/// eta_a eta_b * integral over O_a x O_b of -u . v, with eta the inverse cap
/// area, by product Gauss-Legendre quadrature in (cos polar, azimuth).
double smeared_correlation(const SphericalCap& cap_a, const SphericalCap& cap_b);

/// -(1 - eps_a/2)(1 - eps_b/2) a . b: u . a is uniform on [1 - eps, 1]
/// over a cap, so each cap mean is (1 - eps/2) times its axis.
double smeared_closed_form(const SphericalCap& cap_a, const SphericalCap& cap_b);

/// Quadrature for the normalized mean vector of a cap (exposed for tests).
std::array<double, 3> cap_mean(const SphericalCap& cap);

}  // namespace bellsim::quantum
