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

#include "bellsim/quantum/chsh_operator.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace bellsim::quantum {

namespace {

void require_observable(const Observable2& o) {
  if (o.norm() > 1.0 + 1e-9) throw Error("not a valid observable");
}

bool squares_to_identity(const Observable2& o) {
  return (o.matrix() * o.matrix() - Matrix2::identity()).frobenius_norm() <= 1e-10;
}

}  // namespace

Operator4 chsh_operator(const Observable2& a, const Observable2& ap, const Observable2& b, const Observable2& bp,
                        const ineq::SignVariant& variant) {
  for (const Observable2* o : {&a, &ap, &b, &bp}) require_observable(*o);
  Matrix4 s;
  s += Complex(variant[0]) * kron(a.matrix(), b.matrix());
  s += Complex(variant[1]) * kron(a.matrix(), bp.matrix());
  s += Complex(variant[2]) * kron(ap.matrix(), b.matrix());
  s += Complex(variant[3]) * kron(ap.matrix(), bp.matrix());
  return Operator4(s);
}

TsirelsonCheck tsirelson_inequality_check(const Observable2& a, const Observable2& ap, const Observable2& b,
                                          const Observable2& bp) {
  const Matrix4 s = chsh_operator(a, ap, b, bp).matrix();
  const Matrix4 cross = kron(commutator(a.matrix(), ap.matrix()), commutator(b.matrix(), bp.matrix()));
  TsirelsonCheck r;
  r.lhs = s * s;
  r.rhs = Complex(4.0) * Matrix4::identity() + cross;
  r.psd_gap = hermitian_eigen(r.rhs - r.lhs).values.front();
  r.involutions = squares_to_identity(a) && squares_to_identity(ap) && squares_to_identity(b) && squares_to_identity(bp);
  if (r.involutions) {
    const Matrix4 c = Complex(0.5) * s;
    r.landau_residual = (c * c - Matrix4::identity() - Complex(0.25) * cross).frobenius_norm();
  }
  return r;
}

SeparableMixture::SeparableMixture(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error("separable mixture has no components");
  double total = 0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0)) throw Error("separable mixture weight is negative");
    total += c.weight;
    validate_qubit_density(c.rho1);
    validate_qubit_density(c.rho2);
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("separable mixture weights do not sum to 1");
}

QuantumState SeparableMixture::state() const {
  Matrix4 rho;
  for (const auto& c : components_) rho += Complex(c.weight) * kron(c.rho1, c.rho2);
  return QuantumState::density(rho);
}

double separable_chsh(const SeparableMixture& mixture, const UnitVector3& a, const UnitVector3& ap,
                      const UnitVector3& b, const UnitVector3& bp) {
  auto q = correlation_set_quantum(mixture.state(), a, ap, b, bp);
  return q.correlations.chsh(ineq::SignVariant::canonical());
}

SphericalCap::SphericalCap(UnitVector3 axis_, double epsilon_) : axis(axis_), epsilon(epsilon_) {
  if (!(epsilon > 0.0 && epsilon <= 2.0)) throw Error("cap epsilon must lie in (0, 2]");
}

std::array<double, 3> cap_mean(const SphericalCap& cap) {
  // Orthonormal frame (e1, e2, axis).
  const auto& n = cap.axis.components();
  std::array<double, 3> helper = std::abs(n[0]) < 0.9 ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{0, 1, 0};
  auto cross = [](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return std::array<double, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  };
  auto e1 = cross(n, helper);
  const double l = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (auto& c : e1) c /= l;
  const auto e2 = cross(n, e1);

  // On the unit sphere dA = dt dphi with t = cos(polar angle).
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const double t_lo = 1.0 - cap.epsilon;
  std::array<double, 3> mean{};
  for (std::size_t k = 0; k < 3; ++k) {
    auto inner_integral = [&](double t) {
      const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
      return Rule::integrate(
          [&](double phi) { return t * n[k] + r * (std::cos(phi) * e1[k] + std::sin(phi) * e2[k]); }, 0.0,
          2.0 * M_PI);
    };
    mean[k] = Rule::integrate(inner_integral, t_lo, 1.0) / (2.0 * M_PI * cap.epsilon);
  }
  return mean;
}

double smeared_correlation(const SphericalCap& cap_a, const SphericalCap& cap_b) {
  // The integrand -u . v is bilinear, so the double integral factorizes into
  // the dot product of the two cap means.
  const auto ma = cap_mean(cap_a);
  const auto mb = cap_mean(cap_b);
  return -(ma[0] * mb[0] + ma[1] * mb[1] + ma[2] * mb[2]);
}

double smeared_closed_form(const SphericalCap& cap_a, const SphericalCap& cap_b) {
  return -(1.0 - cap_a.epsilon / 2) * (1.0 - cap_b.epsilon / 2) * cap_a.axis.dot(cap_b.axis);
}

}  // namespace bellsim::quantum
