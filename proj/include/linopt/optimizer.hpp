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

// Random-restart simplex search over mode unitaries for the largest
// maximally-entangled projection probability.

#ifndef LINOPT_OPTIMIZER_HPP_
#define LINOPT_OPTIMIZER_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "linopt/types.hpp"

namespace linopt {

struct OptimizerConfig {
  int n = 4;
  int d = 2;
  Statistics statistics = Statistics::Bosonic;
  int restarts = 1;
  int max_iterations = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-15;  // objective spread across the simplex

  void validate() const;
  std::size_t parameter_count() const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
};

struct RestartSummary {
  int index = 0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  double initial_surrogate = 0.0;
  double surrogate = 0.0;
  double hard_success = 0.0;
};

struct OptimizationResult {
  std::vector<double> best_params;
  double best_surrogate = 0.0;
  double best_hard_success = 0.0;
  int best_restart = 0;
  std::vector<RestartSummary> restarts;
};

/// Smooth stand-in for the ME success: sum over non-null elements of
/// 4 s1^2 s2^2 / ((s1^2 + s2^2) d^2), s1 >= s2 the top singular values of P.
/// Each term is at most 2 s1 s2 / d^2 <= <P|P> / d^2 with equality iff
/// s1 == s2, so at d = 2 it equals me_success_probability when every element
/// with s2 > 0 is maximally entangled, and it vanishes on product elements.
double surrogate_objective(std::span<const double> params, const OptimizerConfig& config);

/// Sum over non-null elements of 2 sigma_2^2 / d^2. Same anchor values as
/// the surrogate, but its deficit is linear in the singular-value spread, so
/// a local search on it drives near-ME elements to exact ME.
double polish_objective(std::span<const double> params, const OptimizerConfig& config);

/// me_success_probability of the POVM at `params`.
double hard_success(std::span<const double> params, const OptimizerConfig& config);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` from the axis-aligned simplex x0 + step * e_k. The simplex
/// is rebuilt around the incumbent (with a shrinking step) whenever it
/// collapses, until `max_iterations` are spent or a rebuild brings no
/// improvement.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, std::vector<double> step, int max_iterations,
                             double tolerance);

/// Per restart: a random start, three quarters of the iteration budget on
/// the smooth surrogate, then the rest polishing with polish_objective from a
/// small simplex. The reported success is always the strict ME-classified
/// value at the final point. Deterministic for a fixed config.
OptimizationResult optimize(const OptimizerConfig& config);

/// True iff every result stays at or below 1/2 + 1e-6.
bool verify_bound(const std::vector<OptimizationResult>& results, int d);

}  // namespace linopt

#endif  // LINOPT_OPTIMIZER_HPP_
