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

// POVM induced on two encoded qudits by a mode unitary followed by particle
// detectors on every output mode.
//
// With A, B the first two d-row blocks of U, the click pattern (i, j) has the
// rank-one element F = |P><P| with
//
//   P = A^* Delta B^dagger,   Delta = |i><j| +- |j><i|
//     = a_i b_j^T +- a_j b_i^T   (a_k, b_k: column k of A^*, B^*)
//
// and an extra 1/sqrt(2) for bosonic double clicks (i == j). Fermions have
// no double clicks. The outcome amplitude on |C> is <P|C> = Tr(P^dagger C).

#ifndef LINOPT_POVM_HPP_
#define LINOPT_POVM_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "linopt/fock_oracle.hpp"
#include "linopt/mode_algebra.hpp"
#include "linopt/state_matrix.hpp"

namespace linopt {

/// Output modes (0-based) where the two detectors fire, i <= j.
struct ClickPattern {
  int i = 0;
  int j = 0;

  bool double_click() const { return i == j; }
  auto operator<=>(const ClickPattern&) const = default;
};

template <typename Real>
struct PovmElement {
  ClickPattern pattern;
  CMatrix<Real> P;  // state matrix of |P>; F = |P><P|
  Statistics statistics = Statistics::Bosonic;
  bool null = false;  // <P|P> below tol::kNullNormSq: the outcome never occurs

  /// <P|P> = Tr(P^dagger P): the outcome probability for the maximally mixed
  /// input times d^2.
  Real weight() const { return P.squaredNorm(); }
};

/// All click patterns for n output modes, in lexicographic order.
inline std::vector<ClickPattern> click_patterns(int n, Statistics statistics) {
  std::vector<ClickPattern> out;
  const bool doubles = statistics == Statistics::Bosonic;
  for (int i = 0; i < n; ++i)
    for (int j = doubles ? i : i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

/// P for one pattern from the row blocks A, B.
template <typename Real>
CMatrix<Real> povm_matrix(const CMatrix<Real>& a, const CMatrix<Real>& b, ClickPattern pattern,
                          Statistics statistics) {
  const int i = pattern.i;
  const int j = pattern.j;
  const Real s(exchange_sign(statistics));
  // A^* Delta B^dagger with the two nonzero entries of Delta.
  CMatrix<Real> p = a.col(i).conjugate() * b.col(j).adjoint();
  p += s * (a.col(j).conjugate() * b.col(i).adjoint());
  if (pattern.double_click()) p *= Real(1) / std::sqrt(Real(2));
  return p;
}

template <typename Real>
std::vector<PovmElement<Real>> povm_elements(const ModeUnitary<Real>& u, Eigen::Index d,
                                             Statistics statistics) {
  const auto blocks = partition_blocks(u, d);
  std::vector<PovmElement<Real>> out;
  for (const auto& pattern : click_patterns(static_cast<int>(u.n()), statistics)) {
    PovmElement<Real> e{pattern, povm_matrix<Real>(blocks.A, blocks.B, pattern, statistics),
                        statistics, false};
    e.null = e.weight() < Real(tol::kNullNormSq);
    out.push_back(std::move(e));
  }
  return out;
}

/// |<P|C>|^2.
template <typename Real>
Real outcome_probability(const PovmElement<Real>& element, const TwoQuditState<Real>& state) {
  if (element.P.rows() != state.d())
    throw std::invalid_argument("outcome_probability: dimension mismatch");
  if (element.statistics != state.statistics())
    throw std::invalid_argument("outcome_probability: statistics mismatch");
  return std::norm((element.P.adjoint() * state.matrix()).trace());
}

/// max |sum_patterns |P><P| - I_{d^2}|, row-major vectorization.
template <typename Real>
Real completeness_check(const std::vector<PovmElement<Real>>& elements, Eigen::Index d) {
  const Eigen::Index dim = d * d;
  CMatrix<Real> sum = -CMatrix<Real>::Identity(dim, dim);
  for (const auto& e : elements) {
    if (e.P.rows() != d) throw std::invalid_argument("completeness_check: dimension mismatch");
    // Row-major vector of P is the column-major storage of P^T.
    const CMatrix<Real> pt = e.P.transpose();
    const Eigen::Map<const CVector<Real>> vec(pt.data(), dim);
    sum.noalias() += vec * vec.adjoint();
  }
  return max_abs(sum);
}

/// Largest |formula probability - Fock-oracle probability| over all patterns.
template <typename Real>
Real oracle_crosscheck(const ModeUnitary<Real>& u, const TwoQuditState<Real>& state) {
  const auto n = static_cast<int>(u.n());
  const auto oracle = detection_probabilities(evolve(encode(state, n), u));
  Real worst(0);
  for (const auto& e : povm_elements(u, state.d(), state.statistics())) {
    const auto it = oracle.find(OccupationBasisState(e.pattern.i, e.pattern.j, state.statistics()));
    const Real reference = it == oracle.end() ? Real(0) : it->second;
    worst = std::max(worst, std::abs(outcome_probability(e, state) - reference));
  }
  return worst;
}

}  // namespace linopt

#endif  // LINOPT_POVM_HPP_
