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

#ifndef LINOPT_TYPES_HPP_
#define LINOPT_TYPES_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace linopt {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using MatrixXcd = CMatrix<double>;
using VectorXcd = CVector<double>;

/// Particle exchange statistics of the carriers. Enters every formula as a
/// sign: +1 for bosons, -1 for fermions.
enum class Statistics { Bosonic, Fermionic };

constexpr int exchange_sign(Statistics s) { return s == Statistics::Bosonic ? 1 : -1; }

inline std::string_view to_string(Statistics s) {
  return s == Statistics::Bosonic ? "boson" : "fermion";
}

inline Statistics parse_statistics(std::string_view name) {
  if (name == "boson" || name == "bosonic") return Statistics::Bosonic;
  if (name == "fermion" || name == "fermionic") return Statistics::Fermionic;
  throw std::invalid_argument("statistics: expected \"boson\" or \"fermion\", got \"" +
                              std::string(name) + "\"");
}

// Numerical thresholds shared across modules.
namespace tol {
inline constexpr double kUnitarity = 1e-10;    // max |U^dagger U - I|
inline constexpr double kSymmetry = 1e-12;     // max |N -+ N^T|
inline constexpr double kNormalization = 1e-10;
inline constexpr double kRankRelative = 1e-9;  // sigma_k counts iff > kRankRelative * sigma_1
inline constexpr double kMaxEntangled = 1e-7;  // (sigma_1 - sigma_d) / sigma_1
inline constexpr double kImpossible = 1e-10;   // probability treated as exactly zero
inline constexpr double kNullNormSq = 1e-24;   // <P|P> below this marks a null element
}  // namespace tol

/// Raised when a numerical check of a structural theorem fails (completeness,
/// Schmidt-rank bound, success bound). Distinct from input validation errors.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest entrywise modulus. Zero for empty matrices.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real max_abs(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.size() == 0) return Real(0);
  return m.cwiseAbs().maxCoeff();
}

}  // namespace linopt

#endif  // LINOPT_TYPES_HPP_
