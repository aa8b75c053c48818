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
#include "linopt/mode_algebra.hpp"
#include "linopt/state_matrix.hpp"
#include "test_support.hpp"

using namespace linopt;
using linopt::testing::rng_for;

namespace {

const Statistics kBoth[] = {Statistics::Bosonic, Statistics::Fermionic};

MatrixXcd upper_block(const BilinearForm<double>& f, Eigen::Index d) { return 2.0 * f.matrix().block(0, d, d, d); }

}  // namespace

TEST_SUITE("state-matrix") {

TEST_CASE("TwoQuditState validation") {
  MatrixXcd c = MatrixXcd::Zero(2, 2);
  c(0, 0) = std::sqrt(0.8);
  CHECK_THROWS_AS(TwoQuditStated(c, Statistics::Bosonic), std::invalid_argument);
  CHECK_THROWS_AS(TwoQuditStated(MatrixXcd::Zero(2, 3), Statistics::Bosonic), std::invalid_argument);
  const auto loose = TwoQuditStated::unnormalized(c, Statistics::Fermionic);
  CHECK(loose.norm_squared() == doctest::Approx(0.8));
  c(0, 0) = 1.0;
  const TwoQuditStated s(c, Statistics::Bosonic);
  CHECK(s.d() == 2);
  CHECK(s.vectorized() == VectorXcd::Unit(4, 0));
}

TEST_CASE("vectorization is row-major") {
  MatrixXcd c(2, 2);
  c << 1.0, 2.0, 3.0, 4.0;
  c /= c.norm();
  const auto s = TwoQuditStated(c, Statistics::Bosonic);
  CHECK(s.vectorized() == testing::vec(c));
}

TEST_CASE("embed_bilinear") {
  MatrixXcd one = MatrixXcd::Ones(1, 1);
  SUBCASE("single boson pair") {
    const auto f = embed_bilinear(TwoQuditStated(one, Statistics::Bosonic), 2);
    MatrixXcd expected(2, 2);
    expected << 0.0, 0.5, 0.5, 0.0;
    CHECK(f.matrix() == expected);
  }
  SUBCASE("single fermion pair") {
    const auto f = embed_bilinear(TwoQuditStated(one, Statistics::Fermionic), 2);
    MatrixXcd expected(2, 2);
    expected << 0.0, 0.5, -0.5, 0.0;
    CHECK(f.matrix() == expected);
    CHECK(f.symmetry_residual() == 0.0);
  }
  SUBCASE("padding with vacuum modes") {
    const MatrixXcd c = MatrixXcd::Identity(2, 2) / std::sqrt(2.0);
    const auto f = embed_bilinear(TwoQuditStated(c, Statistics::Bosonic), 5);
    CHECK(f.n() == 5);
    CHECK(f.symmetry_residual() == 0.0);
    CHECK(f.matrix().row(4).isZero(0.0));
    CHECK(f.matrix().col(4).isZero(0.0));
  }
  SUBCASE("too few modes") {
    CHECK_THROWS_AS(embed_bilinear(TwoQuditStated(MatrixXcd::Identity(2, 2) / std::sqrt(2.0), Statistics::Bosonic), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("BilinearForm rejects the wrong symmetry") {
  MatrixXcd m(2, 2);
  m << 0.0, 0.5, 0.5, 0.0;
  CHECK_NOTHROW(BilinearForm<double>(m, Statistics::Bosonic));
  CHECK_THROWS_AS(BilinearForm<double>(m, Statistics::Fermionic), std::invalid_argument);
}

TEST_CASE("transform_bilinear") {
  auto rng = rng_for(3);
  for (auto s : kBoth) {
    const auto state = testing::random_state(2, s, rng);
    const auto f = embed_bilinear(state, 5);
    SUBCASE("identity") { CHECK(transform_bilinear(f, ModeUnitaryd::identity(5)).matrix() == f.matrix()); }
    SUBCASE("preserves (anti)symmetry") {
      const auto m = transform_bilinear(f, random_unitary(5, 9));
      CHECK(m.symmetry_residual() < 1e-14);
    }
    SUBCASE("composes") {
      const auto u1 = random_unitary(5, 10), u2 = random_unitary(5, 11);
      const auto step = transform_bilinear(transform_bilinear(f, u1), u2);
      const auto direct = transform_bilinear(f, u1.then(u2));
      CHECK(max_abs(MatrixXcd(step.matrix() - direct.matrix())) < 1e-14);
    }
    SUBCASE("dimension mismatch") { CHECK_THROWS_AS(transform_bilinear(f, ModeUnitaryd::identity(4)), std::invalid_argument); }
  }
}

TEST_CASE("separable and swap circuits act within the encoding") {
  auto rng = rng_for(4);
  for (auto s : kBoth) {
    for (int t = 0; t < 100; ++t) {
      const Eigen::Index d = 2 + t % 2;
      const auto state = testing::random_state(d, s, rng);
      const MatrixXcd u1 = testing::polar_unitary(d, rng), u2 = testing::polar_unitary(d, rng);
      const MatrixXcd u3 = testing::polar_unitary(1, rng);
      const auto f = embed_bilinear(state, 2 * d + 1);
      const auto sep = transform_bilinear(f, separable_unitary<double>(u1, u2, u3));
      CHECK(max_abs(MatrixXcd(upper_block(sep, d) - u1.transpose() * state.matrix() * u2)) <= 1e-12);
      const auto sw = transform_bilinear(f, swap_unitary(2 * d + 1, d));
      const double sign = exchange_sign(s);
      CHECK(max_abs(MatrixXcd(upper_block(sw, d) - sign * state.matrix().transpose())) <= 1e-12);
    }
  }
}

TEST_CASE("apply_local") {
  const MatrixXcd phi_plus = MatrixXcd::Identity(2, 2) / std::sqrt(2.0);
  const TwoQuditStated state(phi_plus, Statistics::Bosonic);
  SUBCASE("identity") {
    CHECK(apply_local<double>(MatrixXcd::Identity(2, 2), MatrixXcd::Identity(2, 2), state).matrix() == phi_plus);
  }
  SUBCASE("flip of the first qudit") {
    MatrixXcd x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const auto out = apply_local<double>(x, MatrixXcd::Identity(2, 2), state);
    CHECK(max_abs(MatrixXcd(out.matrix() - x / std::sqrt(2.0))) < 1e-16);
  }
  SUBCASE("matches the Kronecker product on vectorized states") {
    auto rng = rng_for(6);
    for (int t = 0; t < 30; ++t) {
      const Eigen::Index d = 2 + t % 3;
      const auto st = testing::random_state(d, Statistics::Bosonic, rng);
      const MatrixXcd a = testing::random_complex(d, d, rng), b = testing::random_complex(d, d, rng);
      const VectorXcd expected = testing::kron(a, b) * testing::vec(st.matrix());
      const auto out = apply_local(a, b, st);
      CHECK(max_abs(VectorXcd(out.vectorized() - expected)) < 1e-12);
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(apply_local<double>(MatrixXcd::Identity(3, 3), MatrixXcd::Identity(2, 2), state),
                    std::invalid_argument);
  }
}

TEST_CASE("inner_product") {
  auto rng = rng_for(7);
  const auto x = testing::random_state(3, Statistics::Bosonic, rng);
  CHECK(std::abs(inner_product(x, x) - 1.0) < 1e-14);
  MatrixXcd e11 = MatrixXcd::Zero(2, 2), e22 = MatrixXcd::Zero(2, 2);
  e11(0, 0) = 1.0;
  e22(1, 1) = 1.0;
  CHECK(inner_product(TwoQuditStated(e11, Statistics::Bosonic), TwoQuditStated(e22, Statistics::Bosonic)) ==
        std::complex<double>(0.0));
  for (int t = 0; t < 20; ++t) {
    const auto a = testing::random_state(3, Statistics::Bosonic, rng);
    const auto b = testing::random_state(3, Statistics::Bosonic, rng);
    const std::complex<double> expected = testing::vec(a.matrix()).dot(testing::vec(b.matrix()));
    CHECK(std::abs(inner_product(a, b) - expected) < 1e-14);
  }
  CHECK_THROWS_AS(inner_product(x, testing::random_state(2, Statistics::Bosonic, rng)), std::invalid_argument);
}

TEST_CASE("reduced_density") {
  SUBCASE("maximally entangled state has maximally mixed reductions") {
    const TwoQuditStated phi(MatrixXcd::Identity(2, 2) / std::sqrt(2.0), Statistics::Bosonic);
    CHECK(max_abs(MatrixXcd(reduced_density(phi, 1) - MatrixXcd::Identity(2, 2) / 2.0)) < 1e-15);
    CHECK(max_abs(MatrixXcd(reduced_density(phi, 2) - MatrixXcd::Identity(2, 2) / 2.0)) < 1e-15);
  }
  SUBCASE("product state") {
    MatrixXcd e11 = MatrixXcd::Zero(2, 2);
    e11(0, 0) = 1.0;
    const TwoQuditStated s(e11, Statistics::Bosonic);
    CHECK(reduced_density(s, 1) == e11);
  }
  SUBCASE("agrees with explicit partial traces") {
    auto rng = rng_for(8);
    for (int t = 0; t < 30; ++t) {
      const Eigen::Index d = 2 + t % 3;
      const auto st = testing::random_state(d, Statistics::Fermionic, rng);
      const VectorXcd psi = testing::vec(st.matrix());
      const MatrixXcd r1 = reduced_density(st, 1), r2 = reduced_density(st, 2);
      CHECK(max_abs(MatrixXcd(r1 - testing::trace_out_second(psi, d))) < 1e-14);
      CHECK(max_abs(MatrixXcd(r2 - testing::trace_out_first(psi, d))) < 1e-14);
      CHECK(std::abs(r1.trace() - 1.0) < 1e-12);
      const Eigen::VectorXd ev1 = Eigen::SelfAdjointEigenSolver<MatrixXcd>(r1).eigenvalues();
      const Eigen::VectorXd ev2 = Eigen::SelfAdjointEigenSolver<MatrixXcd>(r2).eigenvalues();
      CHECK(ev1.minCoeff() > -1e-14);
      CHECK((ev1 - ev2).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("invalid subsystem") {
    const TwoQuditStated phi(MatrixXcd::Identity(2, 2) / std::sqrt(2.0), Statistics::Bosonic);
    CHECK_THROWS_AS(reduced_density(phi, 3), std::invalid_argument);
  }
}

TEST_CASE("bell_state") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(MatrixXcd(bell_state(2, 0, 0).matrix() - r * MatrixXcd::Identity(2, 2))) < 1e-16);
  MatrixXcd singlet(2, 2);
  singlet << 0.0, r, -r, 0.0;
  CHECK(max_abs(MatrixXcd(bell_state(2, 1, 1).matrix() - singlet)) < 1e-15);
  CHECK_THROWS_AS(bell_state(2, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(bell_state(3, 0, -1), std::out_of_range);
  for (Eigen::Index d = 2; d <= 4; ++d) {
    for (Eigen::Index a = 0; a < d * d; ++a)
      for (Eigen::Index b = 0; b < d * d; ++b) {
        const auto x = bell_state(d, a / d, a % d), y = bell_state(d, b / d, b % d);
        CHECK(std::abs(inner_product(x, y) - (a == b ? 1.0 : 0.0)) < 1e-14);
      }
    const auto any = bell_state(d, d - 1, 1);
    CHECK(max_abs(MatrixXcd(reduced_density(any, 1) - MatrixXcd::Identity(d, d) / double(d))) < 1e-15);
  }
}

}  // TEST_SUITE
