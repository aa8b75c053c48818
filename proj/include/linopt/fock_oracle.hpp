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

// Brute-force two-particle Fock-space simulator.
//
// Works directly with creation-operator monomials and never touches the
// bilinear-form or POVM formulas, so it serves as ground truth for them.
//
// Basis conventions:
//   (i, j), i < j : a_i^dagger a_j^dagger |0>
//   (i, i)        : (a_i^dagger)^2 |0> / sqrt(2)      (bosons only)

#ifndef LINOPT_FOCK_ORACLE_HPP_
#define LINOPT_FOCK_ORACLE_HPP_

#include <cmath>
#include <compare>
#include <map>
#include <string>

#include "linopt/mode_algebra.hpp"
#include "linopt/state_matrix.hpp"

namespace linopt {

/// Ordered occupied-mode pair, 0-based.
struct OccupationBasisState {
  int i = 0;
  int j = 0;

  OccupationBasisState() = default;
  OccupationBasisState(int first, int second, Statistics statistics) : i(first), j(second) {
    if (i < 0 || j < i) throw std::invalid_argument("occupation pair must satisfy 0 <= i <= j");
    if (i == j && statistics == Statistics::Fermionic)
      throw std::invalid_argument("double occupation of a mode is forbidden for fermions (Pauli exclusion)");
  }

  bool double_occupied() const { return i == j; }
  auto operator<=>(const OccupationBasisState&) const = default;
};

template <typename Real>
struct FockVector {
  int n = 0;
  Statistics statistics = Statistics::Bosonic;
  std::map<OccupationBasisState, Complex<Real>> amplitudes;

  Real norm_squared() const {
    Real sum(0);
    for (const auto& [_, a] : amplitudes) sum += std::norm(a);
    return sum;
  }

  Complex<Real> amplitude(int i, int j) const {
    auto it = amplitudes.find(OccupationBasisState(i, j, statistics));
    return it == amplitudes.end() ? Complex<Real>(0) : it->second;
  }
};

/// One particle in modes [0, d) and one in [d, 2d): amplitude of (i, d + j)
/// is C(i, j) for either statistics, since i < d + j always.
template <typename Real>
FockVector<Real> encode(const TwoQuditState<Real>& state, int n) {
  const auto d = static_cast<int>(state.d());
  if (n < 2 * d) throw std::invalid_argument("encode: need n >= 2d");
  FockVector<Real> v{n, state.statistics(), {}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Complex<Real> c = state.matrix()(i, j);
      if (c != Complex<Real>(0)) v.amplitudes[OccupationBasisState(i, d + j, v.statistics)] = c;
    }
  return v;
}

/// Substitutes a_j^dagger = sum_k U(j, k) c_k^dagger into every monomial and
/// re-collects the result in the ordered output basis.
template <typename Real>
FockVector<Real> evolve(const FockVector<Real>& v, const ModeUnitary<Real>& u) {
  if (u.n() != v.n) {
    throw std::invalid_argument("evolve: state has " + std::to_string(v.n) +
                                " modes, unitary has " + std::to_string(u.n()));
  }
  const int n = v.n;
  const Real inv_sqrt2 = Real(1) / std::sqrt(Real(2));
  // coeff(k, l): coefficient of the unordered product c_k^dagger c_l^dagger.
  CMatrix<Real> coeff = CMatrix<Real>::Zero(n, n);
  for (const auto& [basis, amp] : v.amplitudes) {
    const Complex<Real> weight = basis.double_occupied() ? amp * inv_sqrt2 : amp;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) coeff(k, l) += weight * u(basis.i, k) * u(basis.j, l);
  }
  FockVector<Real> out{n, v.statistics, {}};
  const bool bosonic = v.statistics == Statistics::Bosonic;
  for (int k = 0; k < n; ++k) {
    if (bosonic) {
      // (c_k^dagger)^2 |0> = sqrt(2) |2_k>
      const Complex<Real> a = std::sqrt(Real(2)) * coeff(k, k);
      if (a != Complex<Real>(0)) out.amplitudes[OccupationBasisState(k, k, v.statistics)] = a;
    }
    for (int l = k + 1; l < n; ++l) {
      // c_l^dagger c_k^dagger = +- c_k^dagger c_l^dagger
      const Complex<Real> a = bosonic ? coeff(k, l) + coeff(l, k) : coeff(k, l) - coeff(l, k);
      if (a != Complex<Real>(0)) out.amplitudes[OccupationBasisState(k, l, v.statistics)] = a;
    }
  }
  return out;
}

/// Click-pattern probabilities |amplitude|^2.
template <typename Real>
std::map<OccupationBasisState, Real> detection_probabilities(const FockVector<Real>& v) {
  std::map<OccupationBasisState, Real> p;
  for (const auto& [basis, amp] : v.amplitudes) p[basis] = std::norm(amp);
  return p;
}

}  // namespace linopt

#endif  // LINOPT_FOCK_ORACLE_HPP_
