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

#ifndef SPINORBIT_BELL_HPP_
#define SPINORBIT_BELL_HPP_

#include <array>
#include <string>
#include <vector>

#include "spinorbit/density.hpp"
#include "spinorbit/state.hpp"
#include "spinorbit/types.hpp"
#include "spinorbit/window.hpp"

namespace spinorbit {

// The four spin-orbit Bell classes. For each charge q the basis states are
//   phi_pm(q) = (|q, H>  +/- |1-q, V>) / sqrt2
//   psi_pm(q) = (|1-q, H> +/- |q, V>) / sqrt2
// and an outcome aggregates one class over all even q in the window.
enum class BellOutcome : int {
  kPhiPlus = 0,
  kPhiMinus = 1,
  kPsiPlus = 2,
  kPsiMinus = 3,
};

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::kPhiPlus, BellOutcome::kPhiMinus, BellOutcome::kPsiPlus,
    BellOutcome::kPsiMinus};

const char* to_string(BellOutcome o);
BellOutcome bell_outcome_from_string(const std::string& name);

// Two classical bits announced to the receiver: bit 1 distinguishes the
// phi class (0) from the psi class (1), bit 0 carries the sign (+ -> 0).
int classical_bits(BellOutcome o);
BellOutcome outcome_from_bits(int bits);

// The single Bell state phi_pm(q) / psi_pm(q) on the given space and path.
// q and its partner 1-q must lie in the window.
SinglePhotonState bell_state(const ModeSpace& space, int q, BellOutcome o,
                             int path = 0);

// Rank-K projectors P_o = sum_{even 2m} |b_o(2m)><b_o(2m)| on a single-path
// space. The four projectors are mutually orthogonal and sum to the
// identity on the full space (the odd-q Bell states of each class coincide
// with even-q states of the partner class).
struct BellProjectors {
  ModeSpace space;
  std::array<Matrix, 4> ops;  // indexed by BellOutcome

  const Matrix& op(BellOutcome o) const { return ops[static_cast<int>(o)]; }
};

BellProjectors bell_projectors(const OamWindow& window);

// Probability of each outcome when photon A of `psi` is measured in the
// spin-orbit Bell basis. Photon A may live on any path count; the
// projectors act on (charge, polarization) and leave paths alone.
std::array<double, 4> outcome_probabilities(const TwoPhotonState& psi);

// Bob's normalized conditional state after outcome o: the projected joint
// state with photon A traced out (a bucket detection keeps no record of
// which even q fired). Throws ImpossibleOutcomeError if the outcome has
// probability below tol.
DensityMatrix collapse_b(const TwoPhotonState& psi, BellOutcome o,
                         double tol = kTol);

// Decomposition of a two-photon state over the Bell family of photon A:
//   |psi> = sum_o sum_m |b_o(2m)>_A (x) |branch[o][m]>_B
// with unnormalized B-side branch vectors. Requires photon A on one path.
struct BellExpansion {
  ModeSpace space_b;
  std::array<std::vector<Vector>, 4> branches;  // [outcome][pair index]

  double probability(BellOutcome o) const;
  // sum_m |v><v| / P_o, as a DensityMatrix on space_b.
  DensityMatrix conditional_b(BellOutcome o, double tol = kTol) const;
};

BellExpansion expand_in_bell(const TwoPhotonState& psi);

}  // namespace spinorbit

#endif  // SPINORBIT_BELL_HPP_
