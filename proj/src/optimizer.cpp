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

#include "linopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "linopt/entanglement.hpp"
#include "linopt/mode_algebra.hpp"
#include "linopt/povm.hpp"

namespace linopt {

void OptimizerConfig::validate() const {
  if (d < 1) throw std::invalid_argument("optimizer config: d must be positive");
  if (n < 2 * d) {
    throw std::invalid_argument("optimizer config: n must be >= 2d (n=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
  }
  if (restarts < 1) throw std::invalid_argument("optimizer config: restarts must be >= 1");
  if (max_iterations < 0)
    throw std::invalid_argument("optimizer config: max_iterations must be >= 0");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("optimizer config: tolerance must be >= 0");
}

namespace {

std::vector<PovmElement<double>> elements_at(std::span<const double> params,
                                             const OptimizerConfig& config) {
  if (params.size() != config.parameter_count()) {
    throw std::invalid_argument("expected " + std::to_string(config.parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  return povm_elements(parametrized_unitary<double>(config.n, params), config.d,
                       config.statistics);
}

}  // namespace

double surrogate_objective(std::span<const double> params, const OptimizerConfig& config) {
  double total = 0.0;
  if (config.d < 2) {
    (void)elements_at(params, config);
    return total;
  }
  for (const auto& e : elements_at(params, config)) {
    if (e.null) continue;
    const auto sv = Eigen::JacobiSVD<MatrixXcd>(e.P).singularValues();
    const double a = sv(0) * sv(0);
    const double b = sv(1) * sv(1);
    total += 4.0 * a * b / (a + b);
  }
  return total / static_cast<double>(config.d * config.d);
}

double polish_objective(std::span<const double> params, const OptimizerConfig& config) {
  double total = 0.0;
  if (config.d < 2) return total;
  for (const auto& e : elements_at(params, config)) {
    if (e.null) continue;
    const double s2 = Eigen::JacobiSVD<MatrixXcd>(e.P).singularValues()(1);
    total += 2.0 * s2 * s2;
  }
  return total / static_cast<double>(config.d * config.d);
}

double hard_success(std::span<const double> params, const OptimizerConfig& config) {
  return me_success_probability(elements_at(params, config), config.d);
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, std::vector<double> step, int max_iterations,
                             double tolerance) {
  const std::size_t dim = x0.size();
  if (step.size() != dim) throw std::invalid_argument("nelder_mead: step size mismatch");

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(std::span<const double>(x));
  };

  res.x = std::move(x0);
  res.value = eval(res.x);
  if (dim == 0 || max_iterations == 0) {
    res.converged = dim == 0;
    return res;
  }

  // Dimension-adaptive coefficients (Gao and Han); standard 1, 2, 1/2, 1/2 at dim 2.
  const double n_dim = static_cast<double>(dim);
  const double kReflect = 1.0;
  const double kExpand = 1.0 + 2.0 / n_dim;
  const double kContract = 0.75 - 1.0 / (2.0 * n_dim);
  const double kShrink = 1.0 - 1.0 / n_dim;

  std::vector<std::vector<double>> simplex(dim + 1);
  std::vector<double> values(dim + 1);
  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto build = [&](const std::vector<double>& base, double base_value) {
    simplex[0] = base;
    values[0] = base_value;
    for (std::size_t k = 0; k < dim; ++k) {
      simplex[k + 1] = base;
      simplex[k + 1][k] += step[k];
      values[k + 1] = eval(simplex[k + 1]);
    }
  };
  auto along = [&](double t, std::vector<double>& out, std::size_t worst) {
    for (std::size_t k = 0; k < dim; ++k)
      out[k] = centroid[k] + t * (centroid[k] - simplex[worst][k]);
  };

  build(res.x, res.value);
  double rebuild_reference = res.value;
  bool rebuilt = false;
  while (res.iterations < max_iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    if (values[worst] - values[best] <= tolerance) {
      // Collapsed. Restart around the incumbent with a smaller simplex unless
      // the previous restart already failed to improve.
      if (rebuilt && !(values[best] < rebuild_reference)) {
        res.converged = true;
        break;
      }
      rebuilt = true;
      rebuild_reference = values[best];
      for (auto& s : step) s *= 0.1;
      const std::vector<double> base = simplex[best];
      build(base, values[best]);
      ++res.iterations;
      continue;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[v][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    along(kReflect, trial, worst);
    const double fr = eval(trial);
    if (fr < values[best]) {
      along(kExpand, trial2, worst);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
    } else if (fr < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      along(outside ? kContract : -kContract, trial2, worst);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : values[worst])) {
        simplex[worst] = trial2;
        values[worst] = fc;
      } else {
        for (std::size_t v = 0; v <= dim; ++v) {
          if (v == best) continue;
          for (std::size_t k = 0; k < dim; ++k)
            simplex[v][k] = simplex[best][k] + kShrink * (simplex[v][k] - simplex[best][k]);
          values[v] = eval(simplex[v]);
        }
      }
    }
    ++res.iterations;
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  if (values[best] <= res.value) {
    res.x = simplex[best];
    res.value = values[best];
  }
  return res;
}

OptimizationResult optimize(const OptimizerConfig& config) {
  config.validate();
  const std::size_t dim = config.parameter_count();
  auto objective = [&config](std::span<const double> x) {
    return -surrogate_objective(x, config);
  };

  OptimizationResult result;
  result.best_hard_success = -1.0;
  result.best_surrogate = -1.0;
  for (int r = 0; r < config.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> spread(0.2, 0.8);
    std::vector<double> x0(dim), step(dim);
    for (auto& x : x0) x = angle(rng);
    for (auto& s : step) s = spread(rng);

    RestartSummary summary;
    summary.index = r;
    summary.initial_surrogate = surrogate_objective(x0, config);
    const int coarse_budget = config.max_iterations - config.max_iterations / 4;
    auto nm = nelder_mead(objective, std::move(x0), std::move(step), coarse_budget,
                          config.tolerance);
    summary.iterations = nm.iterations;
    summary.evaluations = nm.evaluations;
    const int polish_budget = config.max_iterations - nm.iterations;
    if (polish_budget > 0) {
      auto polish = nelder_mead(
          [&config](std::span<const double> x) { return -polish_objective(x, config); }, nm.x,
          std::vector<double>(dim, 1e-3), polish_budget, config.tolerance);
      summary.iterations += polish.iterations;
      summary.evaluations += polish.evaluations;
      nm.x = std::move(polish.x);
      nm.converged = polish.converged;
      nm.value = -surrogate_objective(nm.x, config);
      summary.evaluations += 1;
    }
    summary.converged = nm.converged;
    summary.surrogate = -nm.value;
    summary.hard_success = hard_success(nm.x, config);

    // Strictly greater keeps the lowest restart index on ties.
    if (summary.hard_success > result.best_hard_success ||
        (summary.hard_success == result.best_hard_success &&
         summary.surrogate > result.best_surrogate)) {
      result.best_hard_success = summary.hard_success;
      result.best_surrogate = summary.surrogate;
      result.best_params = nm.x;
      result.best_restart = r;
    }
    result.restarts.push_back(summary);
  }
  return result;
}

bool verify_bound(const std::vector<OptimizationResult>& results, int d) {
  if (d != 2) throw std::invalid_argument("verify_bound: the 1/2 bound applies to d = 2");
  return std::all_of(results.begin(), results.end(), [](const OptimizationResult& r) {
    return r.best_hard_success <= 0.5 + 1e-6;
  });
}

}  // namespace linopt
