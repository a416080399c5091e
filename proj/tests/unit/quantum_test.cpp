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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "bellsim/quantum/chsh_operator.hpp"
#include "quantum_generators.hpp"

namespace bellsim::quantum {
namespace {

using testing::random_axis;
using testing::random_involution;

const double kSqrt2 = std::sqrt(2.0);

template <std::size_t N>
Eigen::Matrix<std::complex<double>, N, N> to_eigen(const CMatrix<N>& m) {
  Eigen::Matrix<std::complex<double>, N, N> e;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) e(i, j) = m(i, j);
  }
  return e;
}

TEST(SpinOperator, PauliExamples) {
  auto z = spin_operator(UnitVector3(0, 0, 1)).matrix();
  EXPECT_EQ(z(0, 0), Complex(1));
  EXPECT_EQ(z(1, 1), Complex(-1));
  EXPECT_EQ(z(0, 1), Complex(0));
  auto x = spin_operator(UnitVector3(1, 0, 0)).matrix();
  EXPECT_EQ(x(0, 1), Complex(1));
  EXPECT_EQ(x(1, 0), Complex(1));
  EXPECT_EQ(x(0, 0), Complex(0));
}

TEST(SpinOperator, RandomAxesSquareToIdentity) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto s = spin_operator(random_axis(rng));
    EXPECT_LE((s.matrix() * s.matrix() - Matrix2::identity()).frobenius_norm(), 1e-12);
    EXPECT_LE(std::abs(s.matrix().trace()), 1e-15);
    auto e = hermitian_eigen(s.matrix());
    EXPECT_NEAR(e.values[0], -1.0, 1e-12);
    EXPECT_NEAR(e.values[1], 1.0, 1e-12);
  }
}

TEST(UnitVector, RejectsNonUnitAndNormalizesSmallDrift) {
  EXPECT_THROW(UnitVector3(1, 1, 0), Error);
  bool adjusted = false;
  auto v = UnitVector3::parse("1.0000001,0,0", &adjusted);
  EXPECT_TRUE(adjusted);
  EXPECT_DOUBLE_EQ(v.x(), 1.0);
  EXPECT_THROW(UnitVector3::parse("1.1,0,0"), Error);
  EXPECT_THROW(UnitVector3::parse("1,0"), Error);
  EXPECT_THROW(UnitVector3::parse("1,0,zero"), Error);
}

TEST(HermitianEigen, MatchesEigenLibraryOnRandomMatrices) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) {
      m(i, i) = rng.normal();
      for (std::size_t j = i + 1; j < 4; ++j) {
        m(i, j) = Complex(rng.normal(), rng.normal());
        m(j, i) = std::conj(m(i, j));
      }
    }
    auto ours = hermitian_eigen(m);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> oracle(to_eigen(m));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(ours.values[k], oracle.eigenvalues()(k), 1e-11);
    // Columns are eigenvectors: ||M v - lambda v|| small.
    for (std::size_t k = 0; k < 4; ++k) {
      Vector4 v{};
      for (std::size_t i = 0; i < 4; ++i) v[i] = ours.vectors(i, k);
      auto mv = quantum::apply(m, v);
      double err = 0;
      for (std::size_t i = 0; i < 4; ++i) err += std::norm(mv[i] - ours.values[k] * v[i]);
      EXPECT_LE(std::sqrt(err), 1e-10);
    }
  }
}

TEST(Singlet, AlignedAndOpposedAxes) {
  const auto psi = singlet_state();
  const UnitVector3 z(0, 0, 1);
  auto c = conditional_covariance(psi, spin_operator(z), spin_operator(z));
  EXPECT_NEAR(c.e_ab, -1.0, 1e-15);
  EXPECT_NEAR(c.e_a, 0.0, 1e-15);
  EXPECT_NEAR(c.e_b, 0.0, 1e-15);
  EXPECT_NEAR(c.cov, -1.0, 1e-15);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    auto a = random_axis(rng);
    EXPECT_NEAR(conditional_covariance(psi, spin_operator(a), spin_operator(a)).e_ab, -1.0, 1e-12);
    EXPECT_NEAR(conditional_covariance(psi, spin_operator(a), spin_operator(-a)).e_ab, 1.0, 1e-12);
  }
}

TEST(Singlet, CorrelationIsMinusDotProduct) {
  const auto psi = singlet_state();
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_axis(rng);
    auto b = random_axis(rng);
    auto c = conditional_covariance(psi, spin_operator(a), spin_operator(b));
    EXPECT_LE(std::abs(c.e_ab + a.dot(b)), 1e-12);
    EXPECT_LE(std::abs(c.e_a), 1e-12);
    EXPECT_LE(std::abs(c.e_b), 1e-12);
  }
}

TEST(Covariance, MaximallyMixedStateIsUncorrelated) {
  auto rho = QuantumState::density(Complex(0.25) * Matrix4::identity());
  Rng rng(4);
  auto c = conditional_covariance(rho, spin_operator(random_axis(rng)), spin_operator(random_axis(rng)));
  EXPECT_NEAR(c.e_ab, 0, 1e-15);
  EXPECT_NEAR(c.e_a, 0, 1e-15);
  EXPECT_NEAR(c.e_b, 0, 1e-15);
}

TEST(QuantumState, RejectsInvalidInput) {
  EXPECT_THROW(QuantumState::pure({1.0, 1.0, 0.0, 0.0}), Error);
  EXPECT_THROW(QuantumState::density(Matrix4::identity()), Error);
  Matrix4 neg;
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(QuantumState::density(neg), Error);
}

TEST(CorrelationSetQuantum, TsirelsonSettings) {
  const auto s = tsirelson_settings();
  auto q = correlation_set_quantum(singlet_state(), s.a, s.ap, s.b, s.bp);
  const double h = 1 / kSqrt2;
  EXPECT_NEAR(q.correlations[ineq::SettingPair::ab], h, 1e-12);
  EXPECT_NEAR(q.correlations[ineq::SettingPair::abp], -h, 1e-12);
  EXPECT_NEAR(q.correlations[ineq::SettingPair::apb], -h, 1e-12);
  EXPECT_NEAR(q.correlations[ineq::SettingPair::apbp], -h, 1e-12);
  // With E = -a.b and a' = (b + b')/sqrt 2 the value 2 sqrt 2 comes from the
  // absolute-value form; the linear canonical sum cancels.
  EXPECT_NEAR(q.correlations.chsh_abs(), 2 * kSqrt2, 1e-10);
  EXPECT_NEAR(q.correlations.chsh_max(), 2 * kSqrt2, 1e-10);
  EXPECT_NEAR(q.correlations.chsh(ineq::SignVariant::canonical()), 0.0, 1e-12);
  // Flipping a' moves the maximum onto the canonical variant.
  auto flipped = correlation_set_quantum(singlet_state(), s.a, -s.ap, s.b, s.bp);
  EXPECT_NEAR(flipped.correlations.chsh(ineq::SignVariant::canonical()), 2 * kSqrt2, 1e-10);
}

TEST(CorrelationSetQuantum, TablesAreDistributionsMatchingOperators) {
  Rng rng(6);
  const auto psi = singlet_state();
  for (int i = 0; i < 200; ++i) {
    auto a = random_axis(rng), ap = random_axis(rng), b = random_axis(rng), bp = random_axis(rng);
    auto q = correlation_set_quantum(psi, a, ap, b, bp);
    for (ineq::SettingPair s : ineq::kSettingPairs) {
      const auto& t = q.tables[ineq::index(s)];
      double total = 0, corr = 0, alice = 0, bob = 0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          EXPECT_GE(t[x][y], -1e-15);
          const double va = x ? -1 : 1, vb = y ? -1 : 1;
          total += t[x][y];
          corr += va * vb * t[x][y];
          alice += va * t[x][y];
          bob += vb * t[x][y];
        }
      }
      EXPECT_NEAR(total, 1, 1e-12);
      EXPECT_NEAR(corr, q.correlations[s], 1e-12);
      EXPECT_NEAR(alice, 0, 1e-12);
      EXPECT_NEAR(bob, 0, 1e-12);
    }
  }
}

TEST(ChshOperator, IdentityInputsGiveTwoI) {
  auto id = Observable2::identity();
  auto s = chsh_operator(id, id, id, id);
  EXPECT_LE((s.matrix() - Complex(2.0) * Matrix4::identity()).frobenius_norm(), 1e-15);
  EXPECT_NEAR(s.norm(), 2.0, 1e-12);
}

TEST(ChshOperator, RejectsNormAboveOne) {
  auto big = Observable2(Complex(1.5) * pauli_z());
  auto id = Observable2::identity();
  try {
    chsh_operator(big, id, id, id);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not a valid observable"), std::string::npos);
  }
}

TEST(ChshOperator, TsirelsonSettingsSaturate) {
  const auto st = tsirelson_settings();
  auto s = chsh_operator(spin_operator(st.a), spin_operator(st.ap), spin_operator(st.b), spin_operator(st.bp));
  EXPECT_NEAR(s.norm(), 2 * kSqrt2, 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> oracle(to_eigen(s.matrix()));
  EXPECT_NEAR(oracle.eigenvalues().cwiseAbs().maxCoeff(), 2 * kSqrt2, 1e-12);
  auto check = tsirelson_inequality_check(spin_operator(st.a), spin_operator(st.ap), spin_operator(st.b),
                                          spin_operator(st.bp));
  EXPECT_NEAR(check.psd_gap, 0.0, 1e-10);
}

TEST(ChshOperator, RandomInvolutionsObeyTsirelsonAndLandau) {
  Rng rng(7);
  double worst_norm = 0, worst_residual = 0, worst_gap = 1;
  for (int i = 0; i < 1000; ++i) {
    auto a = random_involution(rng), ap = random_involution(rng);
    auto b = random_involution(rng), bp = random_involution(rng);
    worst_norm = std::max(worst_norm, chsh_operator(a, ap, b, bp).norm());
    auto check = tsirelson_inequality_check(a, ap, b, bp);
    ASSERT_TRUE(check.involutions);
    worst_residual = std::max(worst_residual, *check.landau_residual);
    worst_gap = std::min(worst_gap, check.psd_gap);
  }
  EXPECT_LE(worst_norm, 2 * kSqrt2 + 1e-9);
  EXPECT_LE(worst_residual, 1e-10);
  EXPECT_GE(worst_gap, -1e-9);
}

TEST(ChshOperator, CommutingObservablesStayClassical) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    auto n = random_axis(rng);
    auto m = random_axis(rng);
    // Commuting pairs: each side uses +-(its axis) or +-I.
    auto pick = [&](const UnitVector3& axis) {
      switch (rng.below(3)) {
        case 0: return spin_operator(axis);
        case 1: return spin_operator(-axis);
        default: return Observable2::identity();
      }
    };
    auto a = pick(n), ap = pick(n), b = pick(m), bp = pick(m);
    auto check = tsirelson_inequality_check(a, ap, b, bp);
    EXPECT_LE((check.rhs - Complex(4.0) * Matrix4::identity()).frobenius_norm(), 1e-12);
    EXPECT_LE(chsh_operator(a, ap, b, bp).norm(), 2.0 + 1e-12);
  }
}

TEST(ChshOperator, ContractionsKeepOperatorInequality) {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    auto contraction = [&] {
      const double s = rng.uniform01();
      return Observable2(Complex(s) * spin_operator(random_axis(rng)).matrix() +
                         Complex((1 - s) * (2 * rng.uniform01() - 1)) * Matrix2::identity());
    };
    auto check = tsirelson_inequality_check(contraction(), contraction(), contraction(), contraction());
    EXPECT_GE(check.psd_gap, -1e-9);
  }
}

TEST(Separable, ProductAndMixedExamples) {
  Matrix2 up;
  up(0, 0) = 1;
  Matrix2 down;
  down(1, 1) = 1;
  const UnitVector3 z(0, 0, 1);
  SeparableMixture product({{1.0, up, down}});
  // E(AB) = -1 for every pair when all settings are z; with the canonical
  // variant that is -1 + 1 - 1 - 1 = -2.
  EXPECT_NEAR(separable_chsh(product, z, z, z, z), -2.0, 1e-15);
  SeparableMixture aligned({{1.0, up, up}});
  EXPECT_NEAR(separable_chsh(aligned, z, z, z, z), 2.0, 1e-15);
  Matrix2 mixed = Complex(0.5) * Matrix2::identity();
  SeparableMixture flat({{1.0, mixed, mixed}});
  Rng rng(10);
  EXPECT_NEAR(separable_chsh(flat, random_axis(rng), random_axis(rng), random_axis(rng), random_axis(rng)), 0.0,
              1e-15);
}

TEST(Separable, RandomMixturesRespectBound) {
  Rng rng(12);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    auto mix = testing::random_separable(rng);
    worst = std::max(worst, std::abs(separable_chsh(mix, random_axis(rng), random_axis(rng), random_axis(rng),
                                                    random_axis(rng))));
  }
  EXPECT_LE(worst, 2.0 + 1e-9);
}

TEST(Separable, InvalidMixturesThrow) {
  Matrix2 up;
  up(0, 0) = 1;
  EXPECT_THROW(SeparableMixture({{0.5, up, up}}), Error);
  Matrix2 bad;
  bad(0, 0) = 2;
  bad(1, 1) = -1;
  EXPECT_THROW(SeparableMixture({{1.0, bad, up}}), Error);
}

double closed_form(const SphericalCap& a, const SphericalCap& b) {
  return -(1 - a.epsilon / 2) * (1 - b.epsilon / 2) * a.axis.dot(b.axis);
}

TEST(Smeared, ClosedFormOracleAgreesWithMonteCarlo) {
  Rng rng(13);
  for (double eps : {0.4, 0.2}) {
    SphericalCap ca(random_axis(rng), eps), cb(random_axis(rng), eps);
    auto mc = testing::cap_monte_carlo(ca, cb, 1'000'000, 99);
    EXPECT_LE(std::abs(mc.mean - closed_form(ca, cb)), 4 * mc.std_error) << "eps " << eps;
  }
}

TEST(Smeared, QuadratureMatchesClosedForm) {
  Rng rng(14);
  for (double eps : {0.05, 0.1, 0.2, 0.4, 1.0, 2.0}) {
    for (int i = 0; i < 20; ++i) {
      SphericalCap ca(random_axis(rng), eps), cb(random_axis(rng), eps / 2);
      EXPECT_NEAR(smeared_correlation(ca, cb), closed_form(ca, cb), 1e-6);
    }
  }
  const UnitVector3 z(0, 0, 1);
  EXPECT_NEAR(smeared_correlation(SphericalCap(z, 0.2), SphericalCap(z, 0.2)), -0.81, 1e-6);
  EXPECT_NEAR(smeared_correlation(SphericalCap(z, 0.3), SphericalCap(UnitVector3(1, 0, 0), 0.3)), 0.0, 1e-12);
}

TEST(Smeared, ApproachesIdealAsCapsShrink) {
  const UnitVector3 a(0, 0, 1);
  const UnitVector3 b(0.6, 0, 0.8);
  double previous = 0;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    const double v = smeared_correlation(SphericalCap(a, eps), SphericalCap(b, eps));
    EXPECT_GT(std::abs(v), std::abs(previous));
    EXPECT_LT(std::abs(v), std::abs(a.dot(b)));
    previous = v;
  }
  EXPECT_NEAR(smeared_correlation(SphericalCap(a, 1e-6), SphericalCap(b, 1e-6)), -a.dot(b), 1e-6);
}

TEST(Smeared, EpsilonOutOfRangeThrows) {
  const UnitVector3 z(0, 0, 1);
  EXPECT_THROW(SphericalCap(z, 0.0), Error);
  EXPECT_THROW(SphericalCap(z, 2.5), Error);
}

}  // namespace
}  // namespace bellsim::quantum
