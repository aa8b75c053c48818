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

// Schmidt analysis of POVM elements and Bell-measurement figures of merit.

#ifndef LINOPT_ENTANGLEMENT_HPP_
#define LINOPT_ENTANGLEMENT_HPP_

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "linopt/povm.hpp"
#include "linopt/state_matrix.hpp"

namespace linopt {

template <typename Real>
struct SchmidtData {
  RVector<Real> singular_values;  // descending
  int numerical_rank = 0;
};

/// Schmidt coefficients of |P>. Rank counts sigma_k > rel_tol * sigma_1.
template <typename Real>
SchmidtData<Real> schmidt(const CMatrix<Real>& p, Real rel_tol = Real(tol::kRankRelative)) {
  if (p.size() == 0 || max_abs(p) == Real(0))
    throw std::invalid_argument("schmidt: zero matrix has no Schmidt decomposition");
  Eigen::JacobiSVD<CMatrix<Real>> svd(p);
  SchmidtData<Real> out{svd.singularValues(), 0};
  const Real cutoff = rel_tol * out.singular_values(0);
  for (Eigen::Index k = 0; k < out.singular_values.size(); ++k)
    if (out.singular_values(k) > cutoff) ++out.numerical_rank;
  return out;
}

template <typename Real>
struct MEClassification {
  bool is_me = false;
  Real kappa = Real(0);
};

/// |P> is maximally entangled iff P is proportional to a unitary, i.e. all d
/// singular values agree: (sigma_1 - sigma_d) / sigma_1 <= rel_tol.
template <typename Real>
MEClassification<Real> is_maximally_entangled(const CMatrix<Real>& p,
                                              Real rel_tol = Real(tol::kMaxEntangled)) {
  if (p.size() == 0) return {};
  const RVector<Real> sv = Eigen::JacobiSVD<CMatrix<Real>>(p).singularValues();
  const Real top = sv(0);
  if (!(top > Real(0))) return {};
  if ((top - sv(sv.size() - 1)) / top <= rel_tol) return {true, top};
  return {};
}

/// Probability that the maximally mixed input I/d^2 is projected onto a
/// maximally entangled element: sum over ME elements of <P|P> / d^2.
template <typename Real>
Real me_success_probability(const std::vector<PovmElement<Real>>& elements, Eigen::Index d,
                            Real rel_tol = Real(tol::kMaxEntangled)) {
  Real total(0);
  for (const auto& e : elements) {
    if (e.null) continue;
    if (is_maximally_entangled(e.P, rel_tol).is_me) total += e.weight();
  }
  return total / Real(d * d);
}

template <typename Real>
struct BellPatternRow {
  ClickPattern pattern;
  std::vector<Real> probabilities;  // indexed by m * d + k
  std::optional<std::pair<int, int>> identified;  // (m, k)
  bool null = false;
  bool is_me = false;
  Real kappa = Real(0);
  Real weight = Real(0);
  RVector<Real> singular_values;
};

template <typename Real>
struct BellReport {
  int d = 0;
  Statistics statistics = Statistics::Bosonic;
  std::vector<BellPatternRow<Real>> rows;
  std::vector<Real> input_totals;  // sum over patterns, per Bell input
  Real success_uniform_bell = Real(0);
  Real success_maximally_mixed = Real(0);

  int identified_state_count() const {
    std::vector<bool> seen(static_cast<std::size_t>(d * d), false);
    for (const auto& r : rows)
      if (r.identified) seen[static_cast<std::size_t>(r.identified->first * d + r.identified->second)] = true;
    return static_cast<int>(std::count(seen.begin(), seen.end(), true));
  }
};

/// Feeds every generalized Bell state through the measurement. A pattern
/// identifies a Bell state when that state is the only one with nonzero
/// probability (threshold tol::kImpossible).
template <typename Real>
BellReport<Real> bell_discrimination(const ModeUnitary<Real>& u, Eigen::Index d,
                                     Statistics statistics,
                                     Real me_tol = Real(tol::kMaxEntangled)) {
  const auto elements = povm_elements(u, d, statistics);
  std::vector<TwoQuditState<Real>> bells;
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index k = 0; k < d; ++k) bells.push_back(bell_state<Real>(d, m, k, statistics));

  BellReport<Real> report;
  report.d = static_cast<int>(d);
  report.statistics = statistics;
  report.input_totals.assign(bells.size(), Real(0));
  for (const auto& e : elements) {
    BellPatternRow<Real> row;
    row.pattern = e.pattern;
    row.null = e.null;
    row.weight = e.weight();
    int possible = 0;
    std::size_t last = 0;
    for (std::size_t b = 0; b < bells.size(); ++b) {
      const Real p = outcome_probability(e, bells[b]);
      row.probabilities.push_back(p);
      report.input_totals[b] += p;
      if (p >= Real(tol::kImpossible)) {
        ++possible;
        last = b;
      }
    }
    if (!e.null) {
      row.singular_values = Eigen::JacobiSVD<CMatrix<Real>>(e.P).singularValues();
      const auto me = is_maximally_entangled(e.P, me_tol);
      row.is_me = me.is_me;
      row.kappa = me.kappa;
      if (possible == 1) {
        row.identified = std::make_pair(static_cast<int>(last) / report.d,
                                        static_cast<int>(last) % report.d);
        report.success_uniform_bell += row.probabilities[last];
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.success_uniform_bell /= Real(bells.size());
  report.success_maximally_mixed = me_success_probability(elements, d, me_tol);
  return report;
}

/// Per-detector split of the maximally-entangled weight. Each ME element
/// (i, j), i != j, contributes half its weight to detectors i and j. The
/// bound for detector i is (|a_i|^2 + |b_i|^2) / (2 d^2); the bounds add up
/// to 1/2 at d = 2 for every unitary.
template <typename Real>
struct DetectorContribution {
  int mode = 0;
  Real me_weight = Real(0);
  Real bound = Real(0);
};

template <typename Real>
std::vector<DetectorContribution<Real>> detector_accounting(
    const ModeUnitary<Real>& u, Eigen::Index d, Statistics statistics,
    Real me_tol = Real(tol::kMaxEntangled)) {
  const auto blocks = partition_blocks(u, d);
  const Real scale = Real(1) / Real(d * d);
  std::vector<DetectorContribution<Real>> out;
  for (Eigen::Index i = 0; i < u.n(); ++i) {
    out.push_back({static_cast<int>(i), Real(0),
                   (blocks.A.col(i).squaredNorm() + blocks.B.col(i).squaredNorm()) * scale /
                       Real(2)});
  }
  for (const auto& e : povm_elements(u, d, statistics)) {
    if (e.null || !is_maximally_entangled(e.P, me_tol).is_me) continue;
    const Real w = e.weight() * scale;
    if (e.pattern.double_click()) {
      out[static_cast<std::size_t>(e.pattern.i)].me_weight += w;
    } else {
      out[static_cast<std::size_t>(e.pattern.i)].me_weight += w / Real(2);
      out[static_cast<std::size_t>(e.pattern.j)].me_weight += w / Real(2);
    }
  }
  return out;
}

}  // namespace linopt

#endif  // LINOPT_ENTANGLEMENT_HPP_
