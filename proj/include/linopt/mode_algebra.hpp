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

// Mode unitaries of passive linear elements.
//
// Convention: a mode unitary U maps input creation operators onto output
// ones as a_j^dagger = sum_i U(j, i) c_i^dagger. A single particle with
// amplitudes alpha in the input modes leaves with amplitudes U^T alpha.
// Consequently, running element E1 and then E2 is the mode unitary E1 * E2.

#ifndef LINOPT_MODE_ALGEBRA_HPP_
#define LINOPT_MODE_ALGEBRA_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "linopt/types.hpp"

namespace linopt {

/// max |M^dagger M - I| over entries.
template <typename Derived>
auto validate_unitary(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("validate_unitary: matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", not square");
  }
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Plain gram = m.adjoint() * m;
  gram -= Plain::Identity(m.rows(), m.cols());
  return max_abs(gram);
}

/// n x n unitary describing a passive linear optical element. Construction
/// checks unitarity to within `tolerance`.
template <typename Real>
class ModeUnitary {
 public:
  using Matrix = CMatrix<Real>;

  explicit ModeUnitary(Matrix m, Real tolerance = Real(tol::kUnitarity)) : m_(std::move(m)) {
    if (m_.rows() == 0) throw std::invalid_argument("ModeUnitary: mode count must be positive");
    const Real residual = validate_unitary(m_);
    if (!(residual <= tolerance)) {
      throw std::invalid_argument("ModeUnitary: unitarity residual " +
                                  std::to_string(static_cast<double>(residual)) +
                                  " exceeds tolerance " +
                                  std::to_string(static_cast<double>(tolerance)));
    }
  }

  static ModeUnitary identity(Eigen::Index n) { return ModeUnitary(Matrix::Identity(n, n)); }

  Eigen::Index n() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex<Real> operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  /// Sequential application: *this first, then `next`.
  ModeUnitary then(const ModeUnitary& next) const {
    if (next.n() != n()) throw std::invalid_argument("ModeUnitary::then: mode count mismatch");
    return ModeUnitary(m_ * next.m_);
  }

 private:
  Matrix m_;
};

using ModeUnitaryd = ModeUnitary<double>;

// Circuit elements. Mode indices are 1-based, as in external circuit files.
struct BeamSplitter {
  int mode_a = 1;
  int mode_b = 2;
  double theta = 0.0;  // mixing angle
  double phi = 0.0;    // relative phase
};

struct PhaseShifter {
  int mode = 1;
  double phi = 0.0;
};

struct ModeSwap {
  int mode_a = 1;
  int mode_b = 2;
};

using CircuitElement = std::variant<BeamSplitter, PhaseShifter, ModeSwap>;

struct OpticalCircuit {
  int n = 0;
  std::vector<CircuitElement> elements;
};

namespace detail {

inline void check_mode(int mode, int n, const char* what) {
  if (mode < 1 || mode > n) {
    throw std::out_of_range(std::string(what) + ": mode index " + std::to_string(mode) +
                            " outside [1, " + std::to_string(n) + "]");
  }
}

inline void check_pair(int a, int b, int n, const char* what) {
  check_mode(a, n, what);
  check_mode(b, n, what);
  if (a == b) throw std::invalid_argument(std::string(what) + ": modes must differ");
}

// 2x2 block [[cos, e^{i phi} sin], [-e^{-i phi} sin, cos]] on 0-based modes (p, q).
template <typename Real>
CMatrix<Real> givens(Eigen::Index n, Eigen::Index p, Eigen::Index q, Real theta, Real phi) {
  CMatrix<Real> g = CMatrix<Real>::Identity(n, n);
  const Real c = std::cos(theta);
  const Real s = std::sin(theta);
  g(p, p) = c;
  g(p, q) = std::polar(s, phi);
  g(q, p) = -std::polar(s, -phi);
  g(q, q) = c;
  return g;
}

}  // namespace detail

/// Matrix of a single element acting on `n` modes.
template <typename Real = double>
CMatrix<Real> element_matrix(const CircuitElement& element, int n) {
  return std::visit(
      [n](const auto& e) -> CMatrix<Real> {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          detail::check_pair(e.mode_a, e.mode_b, n, "beam splitter");
          return detail::givens<Real>(n, e.mode_a - 1, e.mode_b - 1, Real(e.theta), Real(e.phi));
        } else if constexpr (std::is_same_v<T, PhaseShifter>) {
          detail::check_mode(e.mode, n, "phase shifter");
          CMatrix<Real> m = CMatrix<Real>::Identity(n, n);
          m(e.mode - 1, e.mode - 1) = std::polar(Real(1), Real(e.phi));
          return m;
        } else {
          detail::check_pair(e.mode_a, e.mode_b, n, "mode swap");
          CMatrix<Real> m = CMatrix<Real>::Identity(n, n);
          m.row(e.mode_a - 1).swap(m.row(e.mode_b - 1));
          return m;
        }
      },
      element);
}

/// Mode unitary of a circuit whose elements act in list order:
/// E_1 * E_2 * ... * E_k.
template <typename Real = double>
ModeUnitary<Real> compose_circuit(const OpticalCircuit& circuit) {
  if (circuit.n < 1) throw std::invalid_argument("circuit: mode count must be positive");
  CMatrix<Real> u = CMatrix<Real>::Identity(circuit.n, circuit.n);
  for (const auto& e : circuit.elements) u = u * element_matrix<Real>(e, circuit.n);
  return ModeUnitary<Real>(std::move(u));
}

/// Row blocks of a mode unitary: A = rows [0, d), B = rows [d, 2d), D = rest.
template <typename Real>
struct BlockPartition {
  CMatrix<Real> A;
  CMatrix<Real> B;
  CMatrix<Real> D;
};

template <typename Real>
BlockPartition<Real> partition_blocks(const ModeUnitary<Real>& u, Eigen::Index d) {
  const Eigen::Index n = u.n();
  if (d < 1 || n < 2 * d) {
    throw std::invalid_argument("partition_blocks: need n >= 2d (n=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
  }
  const auto& m = u.matrix();
  BlockPartition<Real> p{m.topRows(d), m.middleRows(d, d), m.bottomRows(n - 2 * d)};
  const CMatrix<Real> cross = p.A * p.B.adjoint();
  if (max_abs(cross) > Real(tol::kUnitarity)) {
    throw InvariantViolation("partition_blocks: A B^dagger is not zero");
  }
  return p;
}

/// Haar-random unitary via QR of a complex Ginibre matrix, with the diagonal
/// of R made real positive.
template <typename Real = double>
ModeUnitary<Real> random_unitary(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_unitary: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal(Real(0), Real(1) / std::sqrt(Real(2)));
  CMatrix<Real> z(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) z(r, c) = Complex<Real>(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix<Real>> qr(z);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(n, n);
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real mag = std::abs(r(k, k));
    q.col(k) *= mag > Real(0) ? r(k, k) / mag : Complex<Real>(1);
  }
  return ModeUnitary<Real>(std::move(q));
}

/// Mode pairs of the Givens mesh in product order.
inline std::vector<std::pair<int, int>> mesh_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p + 1 < n; ++p)
    for (int q = n - 1; q > p; --q) pairs.emplace_back(p, q);
  return pairs;
}

/// Unitary from n^2 real parameters: a product of n(n-1)/2 Givens rotations
/// with phases, followed by n output phases.
///
/// Layout: [theta_1, phi_1, ..., theta_K, phi_K, alpha_1, ..., alpha_n] with
/// rotations on mode pairs (0,n-1), (0,n-2), ..., (0,1), (1,n-1), ...
/// This is the reverse of a Givens QR elimination, so every unitary is
/// reached.
template <typename Real = double>
ModeUnitary<Real> parametrized_unitary(int n, std::span<const Real> params) {
  if (n < 1) throw std::invalid_argument("parametrized_unitary: n must be positive");
  const auto expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (params.size() != expected) {
    throw std::invalid_argument("parametrized_unitary: expected " + std::to_string(expected) +
                                " parameters, got " + std::to_string(params.size()));
  }
  CMatrix<Real> u = CMatrix<Real>::Identity(n, n);
  std::size_t k = 0;
  for (auto [p, q] : mesh_pairs(n)) {
    const Real c = std::cos(params[k]);
    const Real s = std::sin(params[k]);
    const Complex<Real> up = std::polar(s, params[k + 1]);
    const Complex<Real> lo = -std::polar(s, -params[k + 1]);
    k += 2;
    // u <- u * G(p, q): only columns p and q change.
    const CVector<Real> colp = u.col(p);
    const CVector<Real> colq = u.col(q);
    u.col(p) = c * colp + lo * colq;
    u.col(q) = up * colp + c * colq;
  }
  for (int m = 0; m < n; ++m) u.col(m) *= std::polar(Real(1), params[k + m]);
  return ModeUnitary<Real>(std::move(u));
}

template <typename Real = double>
ModeUnitary<Real> parametrized_unitary(int n, const std::vector<Real>& params) {
  return parametrized_unitary<Real>(n, std::span<const Real>(params));
}

/// Block-diagonal diag(U1, U2, U3).
template <typename Real>
ModeUnitary<Real> separable_unitary(const CMatrix<Real>& u1, const CMatrix<Real>& u2,
                                    const CMatrix<Real>& u3) {
  const Eigen::Index n = u1.rows() + u2.rows() + u3.rows();
  CMatrix<Real> u = CMatrix<Real>::Zero(n, n);
  u.block(0, 0, u1.rows(), u1.cols()) = u1;
  u.block(u1.rows(), u1.rows(), u2.rows(), u2.cols()) = u2;
  u.block(u1.rows() + u2.rows(), u1.rows() + u2.rows(), u3.rows(), u3.cols()) = u3;
  return ModeUnitary<Real>(std::move(u));
}

/// Exchanges the two encoding blocks [0, d) and [d, 2d); identity on the rest.
template <typename Real = double>
ModeUnitary<Real> swap_unitary(Eigen::Index n, Eigen::Index d) {
  if (n < 2 * d) throw std::invalid_argument("swap_unitary: need n >= 2d");
  CMatrix<Real> u = CMatrix<Real>::Identity(n, n);
  u.topLeftCorner(2 * d, 2 * d).setZero();
  u.block(0, d, d, d).setIdentity();
  u.block(d, 0, d, d).setIdentity();
  return ModeUnitary<Real>(std::move(u));
}

/// Single-qudit POVM with rank-one elements F_i = v_i v_i^dagger, one per
/// output mode.
template <typename Real>
struct SingleQuditPovm {
  std::vector<CVector<Real>> vectors;

  /// max |sum_i v_i v_i^dagger - I|.
  Real completeness_residual() const {
    if (vectors.empty()) return Real(0);
    const Eigen::Index d = vectors.front().size();
    CMatrix<Real> sum = -CMatrix<Real>::Identity(d, d);
    for (const auto& v : vectors) sum += v * v.adjoint();
    return max_abs(sum);
  }
};

/// POVM on one qudit in modes [0, d): a click in output mode i occurs with
/// amplitude sum_k U(k, i) alpha_k, so v_i = conj(U(0..d-1, i)).
template <typename Real>
SingleQuditPovm<Real> single_qudit_povm(const ModeUnitary<Real>& u, Eigen::Index d) {
  if (d < 1 || u.n() < d) throw std::invalid_argument("single_qudit_povm: need n >= d >= 1");
  SingleQuditPovm<Real> povm;
  povm.vectors.reserve(static_cast<std::size_t>(u.n()));
  for (Eigen::Index i = 0; i < u.n(); ++i)
    povm.vectors.push_back(u.matrix().col(i).head(d).conjugate());
  return povm;
}

/// Neumark dilation: a mode unitary whose single-click POVM on the first d
/// modes is {v_i v_i^dagger}. The first d rows are fixed by the vectors; the
/// remaining rows are an orthonormal completion.
template <typename Real>
ModeUnitary<Real> neumark_unitary(const std::vector<CVector<Real>>& vectors,
                                  Real tolerance = Real(tol::kUnitarity)) {
  if (vectors.empty()) throw std::invalid_argument("neumark_unitary: no vectors");
  const Eigen::Index d = vectors.front().size();
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (d < 1) throw std::invalid_argument("neumark_unitary: zero-dimensional vectors");
  if (n < d) {
    throw std::invalid_argument("neumark_unitary: " + std::to_string(n) +
                                " elements cannot resolve the identity on dimension " +
                                std::to_string(d));
  }
  for (const auto& v : vectors)
    if (v.size() != d) throw std::invalid_argument("neumark_unitary: ragged vector dimensions");
  const Real residual = SingleQuditPovm<Real>{vectors}.completeness_residual();
  if (!(residual <= tolerance)) {
    throw std::invalid_argument("neumark_unitary: sum v v^dagger deviates from identity by " +
                                std::to_string(static_cast<double>(residual)));
  }
  CMatrix<Real> top(d, n);
  for (Eigen::Index i = 0; i < n; ++i) top.col(i) = vectors[static_cast<std::size_t>(i)].conjugate();
  CMatrix<Real> u(n, n);
  u.topRows(d) = top;
  if (n > d) {
    // Columns of Q beyond d are orthogonal to the rows of `top`.
    Eigen::HouseholderQR<CMatrix<Real>> qr(top.transpose());
    const CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(n, n);
    u.bottomRows(n - d) = q.rightCols(n - d).transpose();
  }
  return ModeUnitary<Real>(std::move(u), tolerance * 10);
}

}  // namespace linopt

#endif  // LINOPT_MODE_ALGEBRA_HPP_
