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

#include "bellsim/quantum/observables.hpp"

#include <sstream>

namespace bellsim::quantum {

namespace {

constexpr double kUnitTol = 1e-12;

}  // namespace

UnitVector3::UnitVector3(double x, double y, double z) : v_{x, y, z} {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(std::abs(n - 1.0) <= kUnitTol)) throw Error("vector is not a unit vector (norm " + std::to_string(n) + ")");
}

UnitVector3 UnitVector3::normalized(double x, double y, double z, double slack, bool* adjusted) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(std::abs(n - 1.0) < slack)) {
    throw Error("axis norm " + std::to_string(n) + " deviates from 1 by more than " + std::to_string(slack));
  }
  if (adjusted) *adjusted = std::abs(n - 1.0) > kUnitTol;
  return UnitVector3(x / n, y / n, z / n);
}

UnitVector3 UnitVector3::parse(const std::string& text, bool* adjusted) {
  std::array<double, 3> v{};
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 3) throw Error("axis '" + text + "' must have three components");
    try {
      std::size_t used = 0;
      v[i] = std::stod(part, &used);
      if (part.find_first_not_of(" \t", used) != std::string::npos) throw Error("");
    } catch (const std::exception&) {
      throw Error("axis '" + text + "' has a non-numeric component");
    }
    ++i;
  }
  if (i != 3) throw Error("axis '" + text + "' must have three components");
  return normalized(v[0], v[1], v[2], 1e-6, adjusted);
}

Matrix2 pauli_x() { return Matrix2({0.0, 1.0, 1.0, 0.0}); }
Matrix2 pauli_y() { return Matrix2({0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
Matrix2 pauli_z() { return Matrix2({1.0, 0.0, 0.0, -1.0}); }

Observable2 spin_operator(const UnitVector3& a) {
  return Observable2(Complex(a.x()) * pauli_x() + Complex(a.y()) * pauli_y() + Complex(a.z()) * pauli_z());
}

QuantumState QuantumState::pure(const Vector4& psi) {
  const double n = std::sqrt(inner(psi, psi).real());
  if (std::abs(n - 1.0) > 1e-12) throw Error("state vector is not normalized");
  QuantumState s;
  s.psi_ = psi;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) s.rho_(i, j) = psi[i] * std::conj(psi[j]);
  }
  return s;
}

QuantumState QuantumState::density(const Matrix4& rho) {
  if (rho.hermiticity_error() > 1e-12) throw Error("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-12) throw Error("density matrix trace is not 1");
  auto eig = hermitian_eigen(rho);
  if (eig.values.front() < -1e-10) throw Error("density matrix has a negative eigenvalue");
  QuantumState s;
  s.rho_ = rho;
  return s;
}

double QuantumState::expectation(const Matrix4& op) const {
  const Complex v = (rho_ * op).trace();
  if (std::abs(v.imag()) > 1e-12) throw InvariantError("expectation has an imaginary part");
  return v.real();
}

QuantumState singlet_state() {
  const double h = 1.0 / std::sqrt(2.0);
  return QuantumState::pure({0.0, h, -h, 0.0});
}

Matrix2 validate_qubit_density(const Matrix2& rho) {
  if (rho.hermiticity_error() > 1e-12) throw Error("qubit density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-12) throw Error("qubit density matrix trace is not 1");
  if (hermitian_eigen(rho).values.front() < -1e-10) throw Error("qubit density matrix is not positive");
  return rho;
}

Covariance conditional_covariance(const QuantumState& state, const Observable2& a, const Observable2& b) {
  const Matrix2 id = Matrix2::identity();
  Covariance c;
  c.e_a = state.expectation(kron(a.matrix(), id));
  c.e_b = state.expectation(kron(id, b.matrix()));
  c.e_ab = state.expectation(kron(a.matrix(), b.matrix()));
  c.cov = c.e_ab - c.e_a * c.e_b;
  return c;
}

namespace {

// Eigenvectors of a . sigma for eigenvalues +1 (index 0) and -1 (index 1).
std::array<std::array<Complex, 2>, 2> spin_eigenvectors(const UnitVector3& n) {
  auto e = hermitian_eigen(spin_operator(n).matrix());
  std::array<std::array<Complex, 2>, 2> out{};
  for (std::size_t i = 0; i < 2; ++i) {
    out[0][i] = e.vectors(i, 1);  // ascending order: column 1 is +1
    out[1][i] = e.vectors(i, 0);
  }
  return out;
}

OutcomeTable outcome_table(const QuantumState& state, const UnitVector3& a, const UnitVector3& b) {
  const auto va = spin_eigenvectors(a);
  const auto vb = spin_eigenvectors(b);
  OutcomeTable t{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Vector4 ab{};
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) ab[2 * k + l] = va[i][k] * vb[j][l];
      }
      t[i][j] = inner(ab, quantum::apply(state.rho(), ab)).real();
    }
  }
  return t;
}

}  // namespace

QuantumCorrelations correlation_set_quantum(const QuantumState& state, const UnitVector3& a, const UnitVector3& ap,
                                            const UnitVector3& b, const UnitVector3& bp) {
  const std::array<const UnitVector3*, 4> axes = {&a, &ap, &b, &bp};
  QuantumCorrelations q;
  std::array<double, 4> singles{};
  for (ineq::SettingPair s : ineq::kSettingPairs) {
    const UnitVector3& x = *axes[ineq::alice_column(s)];
    const UnitVector3& y = *axes[ineq::bob_column(s)];
    const Covariance c = conditional_covariance(state, spin_operator(x), spin_operator(y));
    q.correlations[s] = c.e_ab;
    singles[ineq::alice_column(s)] = c.e_a;
    singles[ineq::bob_column(s)] = c.e_b;
    q.tables[ineq::index(s)] = outcome_table(state, x, y);
  }
  q.correlations.single = singles;
  return q;
}

ChshSettings tsirelson_settings() { return tsirelson_settings(UnitVector3(1, 0, 0), UnitVector3(0, 1, 0)); }

ChshSettings tsirelson_settings(const UnitVector3& b, const UnitVector3& bp) {
  if (std::abs(b.dot(bp)) > 1e-12) throw Error("b and b' must be orthogonal");
  const double h = 1.0 / std::sqrt(2.0);
  const auto& u = b.components();
  const auto& w = bp.components();
  return {UnitVector3::normalized(h * (w[0] - u[0]), h * (w[1] - u[1]), h * (w[2] - u[2])),
          UnitVector3::normalized(h * (w[0] + u[0]), h * (w[1] + u[1]), h * (w[2] + u[2])), b, bp};
}

}  // namespace bellsim::quantum
