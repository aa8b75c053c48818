// Copyright 2026 The linopt Authors
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

// Two-qudit states in matrix form and their bilinear-form embedding.
//
// |C> = sum_ij C(i, j) |i>|j>, with the first qudit carried by modes [0, d)
// and the second by modes [d, 2d). Row-major vectorization: C(i, j) is the
// coefficient of basis vector i * d + j.

#ifndef LINOPT_STATE_MATRIX_HPP_
#define LINOPT_STATE_MATRIX_HPP_

#include <cmath>
#include <numbers>
#include <string>

#include "linopt/mode_algebra.hpp"
#include "linopt/types.hpp"

namespace linopt {

template <typename Real>
class TwoQuditState {
 public:
  using Matrix = CMatrix<Real>;

  /// Normalized state. Throws if Tr(C^dagger C) differs from 1 by more than
  /// the normalization tolerance.
  TwoQuditState(Matrix c, Statistics statistics) : c_(std::move(c)), stats_(statistics) {
    check_square();
    const Real norm = c_.squaredNorm();
    if (std::abs(norm - Real(1)) > Real(tol::kNormalization)) {
      throw std::invalid_argument("state normalization: Tr(C^dagger C) = " +
                                  std::to_string(static_cast<double>(norm)) + ", expected 1");
    }
  }

  /// Intermediate results of linear maps need not be normalized.
  static TwoQuditState unnormalized(Matrix c, Statistics statistics) {
    TwoQuditState s;
    s.c_ = std::move(c);
    s.stats_ = statistics;
    s.check_square();
    return s;
  }

  Eigen::Index d() const { return c_.rows(); }
  const Matrix& matrix() const { return c_; }
  Statistics statistics() const { return stats_; }
  Real norm_squared() const { return c_.squaredNorm(); }

  /// Row-major coefficient vector in the |i>|j> product basis.
  CVector<Real> vectorized() const {
    CVector<Real> v(d() * d());
    for (Eigen::Index i = 0; i < d(); ++i)
      for (Eigen::Index j = 0; j < d(); ++j) v(i * d() + j) = c_(i, j);
    return v;
  }

 private:
  TwoQuditState() = default;

  void check_square() const {
    if (c_.rows() != c_.cols() || c_.rows() == 0)
      throw std::invalid_argument("state matrix must be square and non-empty");
  }

  Matrix c_;
  Statistics stats_ = Statistics::Bosonic;
};

using TwoQuditStated = TwoQuditState<double>;

/// Two-particle state a^T N a |0> over n modes; N is symmetric for bosons and
/// antisymmetric for fermions.
template <typename Real>
class BilinearForm {
 public:
  using Matrix = CMatrix<Real>;

  BilinearForm(Matrix n, Statistics statistics) : n_(std::move(n)), stats_(statistics) {
    if (n_.rows() != n_.cols()) throw std::invalid_argument("bilinear form must be square");
    const Real residual = symmetry_residual();
    if (residual > Real(tol::kSymmetry) * std::max(Real(1), max_abs(n_))) {
      throw std::invalid_argument(std::string("bilinear form is not ") +
                                  (statistics == Statistics::Bosonic ? "symmetric" : "antisymmetric") +
                                  " (residual " + std::to_string(static_cast<double>(residual)) +
                                  ")");
    }
  }

  Eigen::Index n() const { return n_.rows(); }
  const Matrix& matrix() const { return n_; }
  Statistics statistics() const { return stats_; }

  /// max |N - s N^T| with s the exchange sign.
  Real symmetry_residual() const {
    const Real s(exchange_sign(stats_));
    const Matrix diff = n_ - s * n_.transpose();
    return max_abs(diff);
  }

 private:
  Matrix n_;
  Statistics stats_;
};

/// N with the upper encoding block C/2 and the lower one +-C^T/2.
template <typename Real>
BilinearForm<Real> embed_bilinear(const TwoQuditState<Real>& state, Eigen::Index n) {
  const Eigen::Index d = state.d();
  if (n < 2 * d) {
    throw std::invalid_argument("embed_bilinear: need n >= 2d (n=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
  }
  const Real half(0.5);
  const Real s(exchange_sign(state.statistics()));
  CMatrix<Real> m = CMatrix<Real>::Zero(n, n);
  m.block(0, d, d, d) = half * state.matrix();
  m.block(d, 0, d, d) = (s * half) * state.matrix().transpose();
  return BilinearForm<Real>(std::move(m), state.statistics());
}

/// Output-mode form M = U^T N U.
template <typename Real>
BilinearForm<Real> transform_bilinear(const BilinearForm<Real>& form, const ModeUnitary<Real>& u) {
  if (form.n() != u.n()) {
    throw std::invalid_argument("transform_bilinear: form has " + std::to_string(form.n()) +
                                " modes, unitary has " + std::to_string(u.n()));
  }
  CMatrix<Real> m = u.matrix().transpose() * form.matrix() * u.matrix();
  return BilinearForm<Real>(std::move(m), form.statistics());
}

/// (A (x) B)|C> = |A C B^T>. The result is not renormalized.
template <typename Real>
TwoQuditState<Real> apply_local(const CMatrix<Real>& a, const CMatrix<Real>& b,
                                const TwoQuditState<Real>& state) {
  const Eigen::Index d = state.d();
  if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
    throw std::invalid_argument("apply_local: operator dimensions do not match the state");
  return TwoQuditState<Real>::unnormalized(a * state.matrix() * b.transpose(), state.statistics());
}

/// <X|Y> = Tr(C_X^dagger C_Y).
template <typename Real>
Complex<Real> inner_product(const TwoQuditState<Real>& x, const TwoQuditState<Real>& y) {
  if (x.d() != y.d()) throw std::invalid_argument("inner_product: dimension mismatch");
  return (x.matrix().adjoint() * y.matrix()).trace();
}

/// Reduced density matrix of subsystem 1 (C C^dagger) or 2 (C^T C^*).
template <typename Real>
CMatrix<Real> reduced_density(const TwoQuditState<Real>& state, int subsystem) {
  const auto& c = state.matrix();
  if (subsystem == 1) return c * c.adjoint();
  if (subsystem == 2) return c.transpose() * c.conjugate();
  throw std::invalid_argument("reduced_density: subsystem must be 1 or 2, got " +
                              std::to_string(subsystem));
}

/// Generalized Bell state from the Weyl pair: phase index m, shift index k.
/// C(j, l) = exp(2 pi i j m / d) [l = j + k mod d] / sqrt(d).
template <typename Real = double>
TwoQuditState<Real> bell_state(Eigen::Index d, Eigen::Index m, Eigen::Index k,
                               Statistics statistics = Statistics::Bosonic) {
  if (d < 1 || m < 0 || m >= d || k < 0 || k >= d) {
    throw std::out_of_range("bell_state: indices (m=" + std::to_string(m) + ", k=" +
                            std::to_string(k) + ") out of range for d=" + std::to_string(d));
  }
  const Real amp = Real(1) / std::sqrt(Real(d));
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  CMatrix<Real> c = CMatrix<Real>::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    c(j, (j + k) % d) = std::polar(amp, two_pi * Real((j * m) % d) / Real(d));
  return TwoQuditState<Real>(std::move(c), statistics);
}

}  // namespace linopt

#endif  // LINOPT_STATE_MATRIX_HPP_
