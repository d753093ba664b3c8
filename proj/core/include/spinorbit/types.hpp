// Copyright 2026 The spinorbit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINORBIT_TYPES_HPP_
#define SPINORBIT_TYPES_HPP_

#include <complex>

#include <Eigen/Dense>

namespace spinorbit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Qubit = Eigen::Vector2cd;
using QubitMatrix = Eigen::Matrix2cd;

// Default tolerance for exact algebraic identities (unitarity, probability
// sums, operator equalities). Everything checked against it is exact in
// real arithmetic; the slack only absorbs floating-point roundoff.
inline constexpr double kTol = 1e-12;

// Slightly looser tolerance for quantities that accumulate roundoff through
// eigendecompositions or long products, e.g. fidelities expected to be
// exactly 1.
inline constexpr double kFidelityTol = 1e-10;

// Polarization basis label. H always sorts before V in basis order.
enum class Pol : int { kH = 0, kV = 1 };

inline const char* to_string(Pol p) { return p == Pol::kH ? "H" : "V"; }

}  // namespace spinorbit

#endif  // SPINORBIT_TYPES_HPP_
