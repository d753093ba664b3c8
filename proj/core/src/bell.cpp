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

#include "spinorbit/bell.hpp"

#include <cmath>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

const char* to_string(BellOutcome o) {
  switch (o) {
    case BellOutcome::kPhiPlus:
      return "phi_plus";
    case BellOutcome::kPhiMinus:
      return "phi_minus";
    case BellOutcome::kPsiPlus:
      return "psi_plus";
    case BellOutcome::kPsiMinus:
      return "psi_minus";
  }
  return "?";
}

BellOutcome bell_outcome_from_string(const std::string& name) {
  for (BellOutcome o : kBellOutcomes) {
    if (name == to_string(o)) return o;
  }
  throw InvalidArgumentError("unknown Bell outcome '" + name + "'");
}

int classical_bits(BellOutcome o) {
  switch (o) {
    case BellOutcome::kPhiPlus:
      return 0b00;
    case BellOutcome::kPhiMinus:
      return 0b01;
    case BellOutcome::kPsiPlus:
      return 0b10;
    case BellOutcome::kPsiMinus:
      return 0b11;
  }
  return 0;
}

BellOutcome outcome_from_bits(int bits) {
  if (bits < 0 || bits > 3) {
    throw InvalidArgumentError("classical message must be 2 bits, got " +
                               std::to_string(bits));
  }
  // bit 1: phi (0) vs psi (1) class, bit 0: sign.
  return kBellOutcomes[bits];
}

SinglePhotonState bell_state(const ModeSpace& space, int q, BellOutcome o,
                             int path) {
  const OamWindow& w = space.window;
  if (!w.contains(q) || !w.contains(OamWindow::partner(q))) {
    throw InvalidArgumentError("Bell state needs q and 1-q in the window");
  }
  const double r = 1.0 / std::sqrt(2.0);
  bool phi_class =
      o == BellOutcome::kPhiPlus || o == BellOutcome::kPhiMinus;
  bool plus = o == BellOutcome::kPhiPlus || o == BellOutcome::kPsiPlus;
  SinglePhotonState psi(space);
  int q_h = phi_class ? q : OamWindow::partner(q);
  int q_v = phi_class ? OamWindow::partner(q) : q;
  psi.amp(q_h, Pol::kH, path) = r;
  psi.amp(q_v, Pol::kV, path) = plus ? r : -r;
  return psi;
}

BellProjectors bell_projectors(const OamWindow& window) {
  ModeSpace space(window, 1);
  BellProjectors out{space, {}};
  for (BellOutcome o : kBellOutcomes) {
    Matrix p = Matrix::Zero(space.dim(), space.dim());
    for (int even : window.even_charges()) {
      SinglePhotonState b = bell_state(space, even, o);
      p += b.amps * b.amps.adjoint();
    }
    out.ops[static_cast<int>(o)] = std::move(p);
  }
  return out;
}

std::array<double, 4> outcome_probabilities(const TwoPhotonState& psi) {
  BellExpansion e = expand_in_bell(psi);
  std::array<double, 4> probs;
  for (BellOutcome o : kBellOutcomes) {
    probs[static_cast<int>(o)] = e.probability(o);
  }
  return probs;
}

DensityMatrix collapse_b(const TwoPhotonState& psi, BellOutcome o,
                         double tol) {
  return expand_in_bell(psi).conditional_b(o, tol);
}

double BellExpansion::probability(BellOutcome o) const {
  double p = 0.0;
  for (const Vector& v : branches[static_cast<int>(o)]) {
    p += v.squaredNorm();
  }
  return p;
}

DensityMatrix BellExpansion::conditional_b(BellOutcome o, double tol) const {
  double p = probability(o);
  if (p <= tol) {
    throw ImpossibleOutcomeError(std::string("outcome ") + to_string(o) +
                                 " has probability " + std::to_string(p));
  }
  DensityMatrix rho(space_b);
  for (const Vector& v : branches[static_cast<int>(o)]) {
    rho.mat += v * v.adjoint();
  }
  rho.mat /= p;
  return rho;
}

BellExpansion expand_in_bell(const TwoPhotonState& psi) {
  const ModeSpace& sa = psi.space_a;
  if (sa.n_paths != 1) {
    throw ShapeMismatchError(
        "Bell expansion needs photon A on a single path");
  }
  BellExpansion out{psi.space_b, {}};
  auto m = psi.as_matrix();
  // branch[o][pair] = (<b_o(2m)| (x) I_B) |psi>.
  for (BellOutcome o : kBellOutcomes) {
    auto& list = out.branches[static_cast<int>(o)];
    list.reserve(sa.window.half_width());
    for (int even : sa.window.even_charges()) {
      SinglePhotonState b = bell_state(sa, even, o);
      list.push_back(m.transpose() * b.amps.conjugate());
    }
  }
  return out;
}

}  // namespace spinorbit
