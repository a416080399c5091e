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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bellsim/common/error.hpp"
#include "bellsim/ineq/correlation.hpp"
#include "bellsim/quantum/linalg.hpp"

namespace bellsim::quantum {

/// A measurement direction. Construction enforces |v| = 1 to 1e-12.
class UnitVector3 {
 public:
  UnitVector3(double x, double y, double z);

  /// Normalizes inputs whose norm is within `slack` of 1 (setting `adjusted`),
  /// rejects anything further off. Used for user-supplied axes.
  static UnitVector3 normalized(double x, double y, double z, double slack = 1e-6, bool* adjusted = nullptr);
  /// Parses "x,y,z".
  static UnitVector3 parse(const std::string& text, bool* adjusted = nullptr);

  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  double z() const { return v_[2]; }
  const std::array<double, 3>& components() const { return v_; }

  double dot(const UnitVector3& o) const { return v_[0] * o.v_[0] + v_[1] * o.v_[1] + v_[2] * o.v_[2]; }
  UnitVector3 operator-() const { return UnitVector3(-v_[0], -v_[1], -v_[2]); }

 private:
  std::array<double, 3> v_;
};

/// Hermitian matrix of dimension N (2 for one qubit, 4 for a pair).
template <std::size_t N>
class HermitianOperator {
 public:
  /// Throws unless `m` equals its conjugate transpose to 1e-12.
  explicit HermitianOperator(const CMatrix<N>& m) : m_(m) {
    if (m.hermiticity_error() > 1e-12) throw Error("operator is not Hermitian");
  }
  static HermitianOperator identity() { return HermitianOperator(CMatrix<N>::identity()); }

  const CMatrix<N>& matrix() const { return m_; }
  double norm() const { return operator_norm(m_); }

 private:
  CMatrix<N> m_;
};

using Observable2 = HermitianOperator<2>;
using Operator4 = HermitianOperator<4>;

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

/// a . sigma.
Observable2 spin_operator(const UnitVector3& a);

/// A two-qubit preparation, always held as a density matrix; pure states
/// also keep their vector.
class QuantumState {
 public:
  static QuantumState pure(const Vector4& psi);
  static QuantumState density(const Matrix4& rho);

  const Matrix4& rho() const { return rho_; }
  const std::optional<Vector4>& vector() const { return psi_; }
  bool is_pure() const { return psi_.has_value(); }

  /// Tr(rho O); throws if the imaginary residue exceeds 1e-12.
  double expectation(const Matrix4& op) const;

 private:
  QuantumState() = default;
  Matrix4 rho_;
  std::optional<Vector4> psi_;
};

/// (|01> - |10>)/sqrt(2), |0> the +1 eigenvector of sigma_z.
QuantumState singlet_state();

/// Validated 2x2 density matrix: Hermitian, unit trace, eigenvalues >= -1e-10.
Matrix2 validate_qubit_density(const Matrix2& rho);

struct Covariance {
  double e_ab = 0;
  double e_a = 0;
  double e_b = 0;
  double cov = 0;
};

/// E(A) = Tr rho (A (x) I), E(B) = Tr rho (I (x) B), E(AB) = Tr rho (A (x) B).
Covariance conditional_covariance(const QuantumState& state, const Observable2& a, const Observable2& b);

/// p(alpha, beta) over alpha, beta in {+1, -1}, indexed [alpha == -1][beta == -1].
using OutcomeTable = std::array<std::array<double, 2>, 2>;

struct QuantumCorrelations {
  ineq::CorrelationSet correlations;         // pairs and singles, no counts
  std::array<OutcomeTable, 4> tables;        // per setting pair, eigenbasis probabilities
};

/// The four correlations for settings (a, a', b, b') with spin observables,
/// plus p_ab(alpha, beta) = <alpha beta| rho |alpha beta> in the joint
/// eigenbasis of each pair.
QuantumCorrelations correlation_set_quantum(const QuantumState& state, const UnitVector3& a, const UnitVector3& ap,
                                            const UnitVector3& b, const UnitVector3& bp);

/// Settings b = x, b' = y, a = (b' - b)/sqrt 2, a' = (b + b')/sqrt 2.
struct ChshSettings {
  UnitVector3 a, ap, b, bp;
};
ChshSettings tsirelson_settings();
/// The same construction for any orthogonal pair b, b' (b . b' = 0 to 1e-12).
ChshSettings tsirelson_settings(const UnitVector3& b, const UnitVector3& bp);

}  // namespace bellsim::quantum
