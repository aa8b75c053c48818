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


#include <cmath>
#include <numbers>

#include "doctest.h"
#include "linopt/entanglement.hpp"
#include "test_support.hpp"

using namespace linopt;
using linopt::testing::rng_for;

namespace {

constexpr double kPi = std::numbers::pi;
const Statistics kBoth[] = {Statistics::Bosonic, Statistics::Fermionic};

ModeUnitaryd bell_analyzer() {
  return compose_circuit(OpticalCircuit{4, {BeamSplitter{1, 3, kPi / 4, 0.0}, BeamSplitter{2, 4, kPi / 4, 0.0}}});
}

}  // namespace

TEST_SUITE("entanglement-analysis") {

TEST_CASE("schmidt") {
  const auto id = schmidt<double>(MatrixXcd::Identity(2, 2));
  CHECK(id.numerical_rank == 2);
  CHECK(id.singular_values(0) == doctest::Approx(1.0));
  CHECK(id.singular_values(1) == doctest::Approx(1.0));
  MatrixXcd e11 = MatrixXcd::Zero(2, 2);
  e11(0, 0) = 1.0;
  const auto prod = schmidt<double>(e11);
  CHECK(prod.numerical_rank == 1);
  CHECK(prod.singular_values(1) == 0.0);
  CHECK_THROWS_AS(schmidt<double>(MatrixXcd::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("elements have Schmidt rank at most two") {
  for (auto s : kBoth)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Eigen::Index d = 2 + seed % 3;
      for (const auto& e : povm_elements(random_unitary(2 * d + seed % 2, seed), d, s)) {
        if (e.null) continue;
        const auto sd = schmidt(e.P);
        CHECK(sd.numerical_rank <= 2);
        if (d > 2) CHECK(sd.singular_values(2) < 1e-10 * sd.singular_values(0));
      }
    }
}

TEST_CASE("is_maximally_entangled") {
  SUBCASE("off-diagonal phase form") {
    for (double phi : {0.0, 0.7, kPi}) {
      const double kappa = 0.37;
      MatrixXcd p(2, 2);
      p << 0.0, 1.0, std::polar(1.0, phi), 0.0;
      const auto me = is_maximally_entangled<double>(kappa * p);
      CHECK(me.is_me);
      CHECK(me.kappa == doctest::Approx(kappa).epsilon(1e-14));
    }
  }
  SUBCASE("unequal singular values") {
    MatrixXcd p = MatrixXcd::Zero(2, 2);
    p(0, 0) = 1.0;
    p(1, 1) = 0.5;
    CHECK_FALSE(is_maximally_entangled<double>(p).is_me);
    CHECK_FALSE(is_maximally_entangled<double>(MatrixXcd::Zero(2, 2)).is_me);
  }
  SUBCASE("invariant under local unitaries and phases") {
    auto rng = rng_for(1);
    for (int t = 0; t < 30; ++t) {
      const Eigen::Index d = 2 + t % 3;
      const MatrixXcd w = testing::polar_unitary(d, rng), v = testing::polar_unitary(d, rng);
      const std::complex<double> phase = std::polar(1.0, 0.1 * t);
      const MatrixXcd me = 0.8 * testing::polar_unitary(d, rng);
      const MatrixXcd not_me = testing::random_complex(d, d, rng);
      CHECK(is_maximally_entangled<double>(MatrixXcd(phase * w * me * v)).is_me);
      CHECK(is_maximally_entangled<double>(MatrixXcd(phase * w * not_me * v)).is_me ==
            is_maximally_entangled<double>(not_me).is_me);
      CHECK(is_maximally_entangled<double>(MatrixXcd(phase * w * me * v)).kappa == doctest::Approx(0.8));
    }
  }
  SUBCASE("no element is maximally entangled beyond qubits") {
    for (auto s : kBoth)
      for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (const auto& e : povm_elements(random_unitary(6 + seed % 3, seed), 3, s))
          CHECK_FALSE(is_maximally_entangled(e.P).is_me);
  }
}

TEST_CASE("Bell analyzer") {
  const auto u = bell_analyzer();
  const std::map<ClickPattern, std::pair<int, int>> bosons{
      {{0, 1}, {0, 1}}, {{0, 3}, {1, 1}}, {{1, 2}, {1, 1}}, {{2, 3}, {0, 1}}};
  const std::map<ClickPattern, std::pair<int, int>> fermions{
      {{0, 1}, {1, 1}}, {{0, 3}, {0, 1}}, {{1, 2}, {0, 1}}, {{2, 3}, {1, 1}}};
  for (auto s : kBoth) {
    const auto report = bell_discrimination(u, 2, s);
    CHECK(report.identified_state_count() == 2);
    CHECK(std::abs(report.success_uniform_bell - 0.5) <= 1e-10);
    CHECK(std::abs(report.success_maximally_mixed - 0.5) <= 1e-10);
    CHECK(std::abs(me_success_probability(povm_elements(u, 2, s), 2) - 0.5) <= 1e-10);
    for (double total : report.input_totals) CHECK(std::abs(total - 1.0) <= 1e-10);
    const auto& expected = s == Statistics::Bosonic ? bosons : fermions;
    for (const auto& row : report.rows) {
      const auto it = expected.find(row.pattern);
      CHECK(row.identified.has_value() == (it != expected.end()));
      if (row.identified && it != expected.end()) CHECK(*row.identified == it->second);
      CHECK(row.identified.has_value() == row.is_me);
    }
  }
}

TEST_CASE("Bell analyzer assignment follows from the first-quantized oracle") {
  const auto u = bell_analyzer();
  for (auto s : kBoth) {
    const auto report = bell_discrimination(u, 2, s);
    std::vector<Eigen::MatrixXd> clicks;
    for (int b = 0; b < 4; ++b) clicks.push_back(testing::first_quantized_clicks(bell_state(2, b / 2, b % 2, s).matrix(), u.matrix(), s));
    for (const auto& row : report.rows) {
      int possible = 0, last = -1;
      for (int b = 0; b < 4; ++b) {
        const double p = clicks[b](row.pattern.i, row.pattern.j);
        CHECK(std::abs(p - row.probabilities[b]) < 1e-12);
        if (p >= 1e-10) ++possible, last = b;
      }
      if (possible == 1) {
        REQUIRE(row.identified.has_value());
        CHECK(row.identified->first * 2 + row.identified->second == last);
      } else {
        CHECK_FALSE(row.identified.has_value());
      }
    }
  }
}

TEST_CASE("basis measurement identifies nothing") {
  const auto report = bell_discrimination(ModeUnitaryd::identity(4), 2, Statistics::Bosonic);
  CHECK(report.identified_state_count() == 0);
  CHECK(report.success_uniform_bell == 0.0);
  CHECK(report.success_maximally_mixed == 0.0);
}

TEST_CASE("random circuits never beat one half") {
  for (auto s : kBoth)
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const auto u = random_unitary(4 + seed % 3, 5000 + seed);
      const auto elements = povm_elements(u, 2, s);
      CHECK(me_success_probability(elements, 2) <= 0.5 + 1e-9);
      const auto report = bell_discrimination(u, 2, s);
      CHECK(report.success_uniform_bell <= 0.5 + 1e-9);
      for (double total : report.input_totals) CHECK(std::abs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("qutrit success is identically zero") {
  for (auto s : kBoth)
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto u = random_unitary(6 + seed % 3, seed);
      CHECK(me_success_probability(povm_elements(u, 3, s), 3) == 0.0);
      CHECK(bell_discrimination(u, 3, s).success_uniform_bell == 0.0);
    }
}

TEST_CASE("per-detector accounting") {
  SUBCASE("analyzer saturates every detector") {
    for (const auto& c : detector_accounting(bell_analyzer(), 2, Statistics::Bosonic)) {
      CHECK(c.me_weight == doctest::Approx(0.125).epsilon(1e-12));
      CHECK(c.bound == doctest::Approx(0.125).epsilon(1e-12));
    }
  }
  SUBCASE("random circuits respect every detector bound") {
    for (auto s : kBoth)
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto u = random_unitary(4 + seed % 3, 7000 + seed);
        double me = 0.0, bounds = 0.0;
        for (const auto& c : detector_accounting(u, 2, s)) {
          CHECK(c.me_weight <= c.bound + 1e-9);
          me += c.me_weight;
          bounds += c.bound;
        }
        CHECK(bounds == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(me == doctest::Approx(me_success_probability(povm_elements(u, 2, s), 2)).epsilon(1e-12));
      }
  }
}

}  // TEST_SUITE
