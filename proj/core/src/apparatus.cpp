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

#include "spinorbit/apparatus.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "spinorbit/density.hpp"
#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

// Path layout shared by the builder and the DSL golden files.
constexpr int kEntry = 0;
constexpr int kEvenArm = 1;
constexpr int kOddArm = 2;
constexpr int kEvenH = 3;
constexpr int kEvenV = 4;
constexpr int kOddH = 5;
constexpr int kOddV = 6;
constexpr int kPathCount = 7;

}  // namespace

BenchLayout build_bell_bench(const OamWindow& window,
                             BsConvention convention) {
  ModeSpace space(window, kPathCount);
  std::vector<ElementOp> stages;
  stages.push_back(parity_sorter(space, kEntry, kEvenArm, kOddArm));
  // Mode matching on the odd arm: the figure's unspecified wave plates,
  // realized as the exact in-window compound q -> 1-q plus a polarization
  // flip. After this the odd arm carries the same (q, pol) labels as the
  // even arm, so the downstream splitters can interfere them.
  stages.push_back(dp_sph(space, kOddArm));
  stages.push_back(hwp(space, M_PI / 4.0, kOddArm));
  if (convention == BsConvention::kSymmetricI) {
    // The i-on-reflection splitter needs a quarter-wave path delay on the
    // converted arm for the Bell states to exit on single detectors.
    stages.push_back(path_phase(space, kOddArm, M_PI / 2.0));
  }
  stages.push_back(pbs(space, kEvenArm, kEvenH, kEvenV));
  stages.push_back(pbs(space, kOddArm, kOddH, kOddV));
  stages.push_back(bs_5050(space, kEvenH, kOddH, convention));
  stages.push_back(bs_5050(space, kEvenV, kOddV, convention));

  BenchLayout layout{space, kEntry,
                     {kEvenH, kOddH, kEvenV, kOddV},
                     compose(stages), convention};
  return layout;
}

int DetectorMap::detector_of(BellOutcome o) const {
  for (int d = 0; d < 4; ++d) {
    if (outcome_at[d] == o) return d;
  }
  throw ConventionError(std::string("no detector announces ") +
                        to_string(o));
}

DetectorMap derive_detector_map(const BenchLayout& bench) {
  const ModeSpace& space = bench.space;
  bool assigned[4] = {false, false, false, false};
  DetectorMap map{};
  bool have_map = false;
  for (int even : space.window.even_charges()) {
    DetectorMap q_map{};
    for (BellOutcome o : kBellOutcomes) {
      SinglePhotonState in = bell_state(space, even, o, bench.entry_path);
      SinglePhotonState out = apply(bench.unitary, in);
      int hits = 0;
      int detector = -1;
      for (int d = 0; d < 4; ++d) {
        double w = out.path_weight(bench.detector_path[d]);
        if (w > 1.0 - kFidelityTol) {
          detector = d;
          ++hits;
        }
      }
      if (hits != 1) {
        throw ConventionError(
            std::string("Bell state ") + to_string(o) + " (q=" +
            std::to_string(even) +
            ") does not land on a unique detector; wiring or convention "
            "bug");
      }
      q_map.outcome_at[detector] = o;
      if (!have_map) assigned[detector] = true;
    }
    if (!have_map) {
      map = q_map;
      have_map = true;
      for (bool a : assigned) {
        if (!a) {
          throw ConventionError("detector labelling is not a bijection");
        }
      }
    } else if (!(q_map.outcome_at == map.outcome_at)) {
      throw ConventionError(
          "detector labelling depends on the OAM charge; wiring bug");
    }
  }
  return map;
}

DetectorStats detector_statistics(const TwoPhotonState& psi,
                                  const BenchLayout& bench) {
  if (psi.space_a.n_paths != 1) {
    throw ShapeMismatchError(
        "photon A must enter the bench on the single protocol path");
  }
  if (bench.entry_path != 0) {
    throw ConventionError("bench entry path must be path 0");
  }
  TwoPhotonState embedded = psi.with_paths_a(bench.space.n_paths);
  TwoPhotonState out = apply_to_photon(bench.unitary, Photon::kA, embedded);

  DetectorStats stats{};
  auto m = out.as_matrix();
  int dim_b = psi.space_b.dim();
  for (int d = 0; d < 4; ++d) {
    // Bucket detector on path p: POVM sum over all (q, pol) on p. The
    // joint state conditioned on the click, with photon A traced out, is
    // sum over the detector's modes of |row|^2 outer products.
    int p = bench.detector_path[d];
    Matrix rho = Matrix::Zero(dim_b, dim_b);
    double prob = 0.0;
    for (int ia = 0; ia < bench.space.dim(); ++ia) {
      if (bench.space.mode_at(ia).path != p) continue;
      Vector row = m.row(ia).transpose();
      prob += row.squaredNorm();
      rho += row * row.adjoint();
    }
    stats.probability[d] = prob;
    if (prob > kTol) {
      rho /= prob;
    } else {
      rho.setZero();
    }
    stats.conditional_b.emplace_back(psi.space_b, std::move(rho));
  }
  return stats;
}

}  // namespace spinorbit
