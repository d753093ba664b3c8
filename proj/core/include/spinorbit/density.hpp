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

#ifndef SPINORBIT_DENSITY_HPP_
#define SPINORBIT_DENSITY_HPP_

#include "spinorbit/state.hpp"
#include "spinorbit/types.hpp"
#include "spinorbit/window.hpp"

namespace spinorbit {

// Mixed state of one photon over a ModeSpace.
struct DensityMatrix {
  ModeSpace space;
  Matrix mat;

  explicit DensityMatrix(ModeSpace s);
  DensityMatrix(ModeSpace s, Matrix m);

  double trace_real() const;
  // tr(rho^2); 1 for pure states.
  double purity() const;

  // Throws unless Hermitian, unit trace and positive semidefinite within
  // tol (eigenvalues above -tol).
  void validate(double tol = kFidelityTol) const;

  // Probability weight on one path (sum of diagonal entries).
  double path_weight(int path) const;
};

DensityMatrix pure_density(const SinglePhotonState& psi);

// Reduced states of a two-photon pure state.
DensityMatrix reduce_to_a(const TwoPhotonState& psi);
DensityMatrix reduce_to_b(const TwoPhotonState& psi);

// Generic partial traces of a (dim_a*dim_b) x (dim_a*dim_b) matrix stored
// with A-major index convention.
Matrix partial_trace_a(const Matrix& joint, int dim_a, int dim_b);
Matrix partial_trace_b(const Matrix& joint, int dim_a, int dim_b);

// <target|rho|target> for a normalized pure target.
double fidelity(const Matrix& rho, const Vector& target);
double fidelity(const DensityMatrix& rho, const SinglePhotonState& target);

// State of the two-dimensional OAM-parity degree of freedom, obtained by
// tracing out everything else. Row/column 0 is even parity, 1 is odd.
struct ParityQubit {
  QubitMatrix rho;

  double purity() const;
  void validate(double tol = kFidelityTol) const;
};

double fidelity(const ParityQubit& rho, const Qubit& target);

// Factorization of the OAM ladder into parity (x) pair label.
//
// The relabelling |2m> -> |even>|pair m>, |1-2m> -> |odd>|pair m> is a
// permutation of the 2K charges onto a 2 x K product, with pairs ordered by
// ascending even charge. `parity` is the reduced state of the 2-dim parity
// factor, `pair_marginal` the reduced state of the K-dim pair label.
struct PairingDecomposition {
  ParityQubit parity;
  Matrix pair_marginal;   // K x K
  Matrix relabeled;       // 2K x 2K, parity-major
};

// Permutation matrix P with P[(s,p), window index of charge] = 1, where s is
// the parity bit and p the pair index. Parity-major: row = s*K + p.
Matrix pairing_permutation(const OamWindow& window);

// Reduce a photon state to its OAM factor (trace out polarization and path),
// then decompose. Accepts any path count.
PairingDecomposition pairing_decomposition(const DensityMatrix& rho);
PairingDecomposition pairing_decomposition(const SinglePhotonState& psi);

// OAM marginal of a photon state: 2K x 2K, window order.
Matrix oam_marginal(const DensityMatrix& rho);

}  // namespace spinorbit

#endif  // SPINORBIT_DENSITY_HPP_
