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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace bellsim::quantum {

using Complex = std::complex<double>;

/// Fixed-size dense complex matrix, row-major. Only N = 2 and N = 4 are used.
template <std::size_t N>
class CMatrix {
 public:
  static constexpr std::size_t kDim = N;

  CMatrix() { a_.fill(Complex(0.0, 0.0)); }
  explicit CMatrix(const std::array<Complex, N * N>& entries) : a_(entries) {}

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }
  const std::array<Complex, N * N>& entries() const { return a_; }

  CMatrix& operator+=(const CMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix x, const CMatrix& y) { return x += y; }
  friend CMatrix operator-(CMatrix x, const CMatrix& y) { return x -= y; }
  friend CMatrix operator*(Complex s, CMatrix x) { return x *= s; }
  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix out;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex xik = x(i, k);
        for (std::size_t j = 0; j < N; ++j) out(i, j) += xik * y(k, j);
      }
    }
    return out;
  }

  CMatrix adjoint() const {
    CMatrix out;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj((*this)(j, i));
    }
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  /// Largest entrywise deviation from the conjugate transpose.
  double hermiticity_error() const {
    double e = 0;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
    return e;
  }

 private:
  std::array<Complex, N * N> a_;
};

using Matrix2 = CMatrix<2>;
using Matrix4 = CMatrix<4>;
using Vector4 = std::array<Complex, 4>;

/// x (x) y with the first factor as the high-order index.
inline Matrix4 kron(const Matrix2& x, const Matrix2& y) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
      }
    }
  }
  return out;
}

template <std::size_t N>
CMatrix<N> commutator(const CMatrix<N>& x, const CMatrix<N>& y) {
  return x * y - y * x;
}

template <std::size_t N>
std::array<Complex, N> apply(const CMatrix<N>& m, const std::array<Complex, N>& v) {
  std::array<Complex, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) out[i] += m(i, j) * v[j];
  }
  return out;
}

template <std::size_t N>
Complex inner(const std::array<Complex, N>& u, const std::array<Complex, N>& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};  // ascending
  CMatrix<N> vectors;              // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi for Hermitian input. Each rotation first removes the phase
/// of the pivot a_pq, then applies the real symmetric Jacobi rotation.
/// Stops once the off-diagonal Frobenius norm drops below `tol`.
template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const CMatrix<N>& input, double tol = 1e-12) {
  CMatrix<N> a = input;
  CMatrix<N> v = CMatrix<N>::identity();
  auto off = [&] {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        if (i != j) s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };
  EigenDecomposition<N> out;
  const double scale = std::max(1.0, input.frobenius_norm());
  for (int sweep = 0; sweep < 100 && off() > tol * scale; ++sweep) {
    out.sweeps = sweep + 1;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;  // e^{i phi}
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = D R with D = diag(.., e^{-i phi} at q, ..) and the real
        // rotation R_pp = R_qq = c, R_pq = s, R_qp = -s.
        CMatrix<N> j = CMatrix<N>::identity();
        j(p, p) = c;
        j(p, q) = s;
        j(q, p) = -s * std::conj(phase);
        j(q, q) = c * std::conj(phase);
        a = j.adjoint() * a * j;
        v = v * j;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// max |eigenvalue| of a Hermitian matrix.
template <std::size_t N>
double operator_norm(const CMatrix<N>& h) {
  auto e = hermitian_eigen(h);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

}  // namespace bellsim::quantum
