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

// Random instance generators and brute-force reference computations shared by
// the test binaries. Nothing here calls into the code under test except for
// constructing value types.

#ifndef LINOPT_TESTS_TEST_SUPPORT_HPP_
#define LINOPT_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "linopt/state_matrix.hpp"
#include "linopt/types.hpp"

namespace linopt::testing {

inline MatrixXcd random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = {g(rng), g(rng)};
  return m;
}

inline MatrixXcd random_normalized(Eigen::Index d, std::mt19937_64& rng) {
  MatrixXcd c = random_complex(d, d, rng);
  return c / c.norm();
}

inline TwoQuditStated random_state(Eigen::Index d, Statistics s, std::mt19937_64& rng) {
  return TwoQuditStated(random_normalized(d, rng), s);
}

/// Unitary from the polar factor of a Ginibre matrix (independent of the
/// QR-based sampler under test).
inline MatrixXcd polar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n == 0) return MatrixXcd(0, 0);
  Eigen::JacobiSVD<MatrixXcd> svd(random_complex(n, n, rng), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Row-major coefficient vector: entry i * d + j is C(i, j).
inline VectorXcd vec(const MatrixXcd& c) {
  VectorXcd v(c.size());
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) v(i * c.cols() + j) = c(i, j);
  return v;
}

/// Partial traces of |psi><psi| over an explicit d^2 vector.
inline MatrixXcd trace_out_second(const VectorXcd& psi, Eigen::Index d) {
  MatrixXcd rho = MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index j = 0; j < d; ++j) rho(i, k) += psi(i * d + j) * std::conj(psi(k * d + j));
  return rho;
}

inline MatrixXcd trace_out_first(const VectorXcd& psi, Eigen::Index d) {
  MatrixXcd rho = MatrixXcd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index i = 0; i < d; ++i) rho(j, l) += psi(i * d + j) * std::conj(psi(i * d + l));
  return rho;
}

/// First-quantized two-particle wavefunction of a block-encoded state: an
/// n x n matrix Psi with Psi(x, y) the amplitude of particle one in mode x and
/// particle two in mode y, (anti)symmetrized.
inline MatrixXcd first_quantized(const MatrixXcd& c, Eigen::Index n, Statistics s) {
  const Eigen::Index d = c.rows();
  const double sign = s == Statistics::Bosonic ? 1.0 : -1.0;
  MatrixXcd psi = MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      psi(i, d + j) += c(i, j) / std::sqrt(2.0);
      psi(d + j, i) += sign * c(i, j) / std::sqrt(2.0);
    }
  return psi;
}

/// Click probabilities after the interferometer: each particle's mode vector
/// maps as x -> U^T x, so Psi -> U^T Psi U. Entry (k, l), k <= l, of the
/// returned matrix is the probability of clicks in modes k and l.
inline Eigen::MatrixXd first_quantized_clicks(const MatrixXcd& c, const MatrixXcd& u, Statistics s) {
  const Eigen::Index n = u.rows();
  const MatrixXcd out = u.transpose() * first_quantized(c, n, s) * u;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    p(k, k) = std::norm(out(k, k));
    for (Eigen::Index l = k + 1; l < n; ++l) p(k, l) = std::norm(out(k, l)) + std::norm(out(l, k));
  }
  return p;
}

// Givens QR elimination of a unitary into mesh parameters: zero the
// subdiagonal column by column, then read the leftover phases. Independent
// of parametrized_unitary, which only has to rebuild the target from them.
inline std::vector<double> mesh_parameters(const MatrixXcd& target) {
  const int n = static_cast<int>(target.rows());
  MatrixXcd m = target;
  std::vector<double> params;
  for (int c = 0; c + 1 < n; ++c) {
    for (int r = n - 1; r > c; --r) {
      const std::complex<double> x = m(c, c), y = m(r, c);
      const double theta = std::atan2(std::abs(y), std::abs(x));
      const double phi = std::abs(y) > 0 ? std::arg(x) - std::arg(y) : 0.0;
      const double cs = std::cos(theta), sn = std::sin(theta);
      const Eigen::RowVectorXcd row_c = m.row(c), row_r = m.row(r);
      m.row(c) = cs * row_c + std::polar(sn, phi) * row_r;
      m.row(r) = -std::polar(sn, -phi) * row_c + cs * row_r;
      // The inverse rotation enters the product: theta -> -theta.
      params.push_back(-theta);
      params.push_back(phi);
    }
  }
  for (int k = 0; k < n; ++k) params.push_back(std::arg(m(k, k)));
  return params;
}

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace linopt::testing

#endif  // LINOPT_TESTS_TEST_SUPPORT_HPP_
