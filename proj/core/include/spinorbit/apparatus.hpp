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

#ifndef SPINORBIT_APPARATUS_HPP_
#define SPINORBIT_APPARATUS_HPP_

#include <array>
#include <vector>

#include "spinorbit/bell.hpp"
#include "spinorbit/elements.hpp"
#include "spinorbit/state.hpp"

namespace spinorbit {

// Path-level model of the Bell-measurement bench.
//
// Photon A enters on `entry_path`, is split by a parity sorter and a pair
// of polarizing splitters into four (parity, polarization) arms, the arms
// are matched in mode (the odd arms pass a reflection + charge-shift
// compound, the V arms a half-wave plate, and - for the symmetric-i
// splitter convention - the converted arms a quarter-wave path delay), and
// two 50/50 splitters recombine them onto four bucket detectors D1..D4.
// Each detector then fires with the probability of exactly one spin-orbit
// Bell class, for every input state confined to the window.
struct BenchLayout {
  ModeSpace space;     // photon-A space including all bench paths
  int entry_path;
  std::array<int, 4> detector_path;  // D1..D4
  ElementOp unitary;   // whole bench, entry to detectors
  BsConvention convention;
};

// Seven paths: 0 entry, 1 even arm, 2 odd arm, 3 even-H, 4 even-V,
// 5 odd-H, 6 odd-V; detectors D1..D4 on paths {3, 5, 4, 6}.
BenchLayout build_bell_bench(const OamWindow& window,
                             BsConvention convention = BsConvention::kSymmetricI);

// Which Bell outcome each detector announces. Derived, not assumed: every
// even-q Bell state is propagated through the bench and must land on
// exactly one detector; the labelling must be a bijection and independent
// of q, otherwise ConventionError is thrown.
struct DetectorMap {
  std::array<BellOutcome, 4> outcome_at;  // indexed by detector 0..3

  int detector_of(BellOutcome o) const;
};

DetectorMap derive_detector_map(const BenchLayout& bench);

// Result of propagating a two-photon state through the bench: for each
// detector, the click probability and Bob's normalized conditional state
// (photon A is absorbed by a bucket detector, so it is traced out).
struct DetectorStats {
  std::array<double, 4> probability;           // indexed by detector
  std::vector<DensityMatrix> conditional_b;    // size 4; zero matrix if p ~ 0
};

// Photon A of `psi` must live on the bench's single-path protocol space;
// it is embedded onto the bench entry path internally.
DetectorStats detector_statistics(const TwoPhotonState& psi,
                                  const BenchLayout& bench);

}  // namespace spinorbit

#endif  // SPINORBIT_APPARATUS_HPP_
