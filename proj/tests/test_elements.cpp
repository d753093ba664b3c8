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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinorbit/density.hpp"
#include "spinorbit/elements.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/state.hpp"

using namespace spinorbit;

namespace {

SinglePhotonState basis(const ModeSpace& space, int q, Pol pol,
                        int path = 0) {
  SinglePhotonState psi(space);
  psi.amp(q, pol, path) = Complex{1.0, 0.0};
  return psi;
}

}  // namespace

TEST_SUITE("elements") {

TEST_CASE("every factory is unitary on every window") {
  for (int k : {1, 2, 3, 5, 8}) {
    ModeSpace one(OamWindow(k), 1);
    ModeSpace three(OamWindow(k), 3);
    std::vector<ElementOp> ops = {
        identity_op(one),
        dove_prism(one),
        spiral_phase(one, 1),
        spiral_phase(one, -1),
        dp_sph(one),
        parity_phase(one, 0.7),
        hwp(one, 0.3),
        qwp(one, 1.1),
        pol_rotation(one, Complex{0.6, 0.0}, Complex{0.0, 0.8}),
        parity_sorter(three, 0, 1, 2),
        pbs(three, 0, 1, 2),
        pbs_junction(three, 0, 1, 0, 1),
        bs_5050(three, 0, 2, BsConvention::kSymmetricI),
        bs_5050(three, 0, 2, BsConvention::kHadamard),
        path_phase(three, 1, 2.2),
    };
    for (const ElementOp& op : ops) {
      CAPTURE(op.label);
      CHECK(is_unitary(op));
    }
  }
}

TEST_CASE("dove prism reflects the charge and guards the top") {
  ModeSpace space(OamWindow(3), 1);  // charges -2..3
  ElementOp op = dove_prism(space);
  SinglePhotonState out = apply(op, basis(space, 2, Pol::kH));
  CHECK(std::abs(out.amp(-2, Pol::kH) - Complex{1.0, 0.0}) < kTol);
  // Polarization rides along untouched.
  out = apply(op, basis(space, -1, Pol::kV));
  CHECK(std::abs(out.amp(1, Pol::kV) - Complex{1.0, 0.0}) < kTol);
  // q = 3 would leave the window: the mode is guarded, not silently moved.
  REQUIRE(op.guarded.size() == 2);  // (3, H), (3, V)
  CHECK(space.mode_at(op.guarded[0]).q == 3);
  CHECK(space.mode_at(op.guarded[1]).q == 3);
  CHECK_THROWS_AS(apply(op, basis(space, 3, Pol::kH)), SupportOverflowError);
}

TEST_CASE("spiral phase shifts the charge and guards the wrap") {
  ModeSpace space(OamWindow(2), 1);  // charges -1..2
  ElementOp up = spiral_phase(space, 1);
  SinglePhotonState out = apply(up, basis(space, 0, Pol::kH));
  CHECK(std::abs(out.amp(1, Pol::kH) - Complex{1.0, 0.0}) < kTol);
  CHECK_THROWS_AS(apply(up, basis(space, 2, Pol::kV)),
                  SupportOverflowError);

  ElementOp down = spiral_phase(space, -1);
  out = apply(down, basis(space, 2, Pol::kH));
  CHECK(std::abs(out.amp(1, Pol::kH) - Complex{1.0, 0.0}) < kTol);
  CHECK_THROWS_AS(apply(down, basis(space, -1, Pol::kH)),
                  SupportOverflowError);

  CHECK_THROWS_AS(spiral_phase(space, 2), InvalidArgumentError);
}

TEST_CASE("the reflection-shift compound is an exact guard-free involution") {
  for (int k : {1, 2, 4, 8}) {
    ModeSpace space(OamWindow(k), 1);
    ElementOp op = dp_sph(space);
    CHECK(op.guarded.empty());
    CHECK((op.u * op.u - Matrix::Identity(space.dim(), space.dim()))
              .norm() < kTol);
    for (int q = space.window.lowest(); q <= space.window.highest(); ++q) {
      SinglePhotonState out = apply(op, basis(space, q, Pol::kH));
      CHECK(std::abs(out.amp(1 - q, Pol::kH) - Complex{1.0, 0.0}) < kTol);
    }
  }
}

TEST_CASE("compound equals dove then shift away from the guard set") {
  ModeSpace space(OamWindow(3), 1);
  ElementOp fused = dp_sph(space);
  ElementOp chained = compose({dove_prism(space), spiral_phase(space, 1)});
  // Identical action on every unguarded input column.
  for (int i = 0; i < space.dim(); ++i) {
    bool guarded = false;
    for (int g : chained.guarded) guarded |= (g == i);
    if (guarded) continue;
    CHECK((fused.u.col(i) - chained.u.col(i)).norm() < kTol);
  }
  CHECK(!chained.guarded.empty());
}

TEST_CASE("parity phase marks odd charges only") {
  ModeSpace space(OamWindow(2), 1);
  double phi = 1.234;
  ElementOp op = parity_phase(space, phi);
  CHECK(op.guarded.empty());
  SinglePhotonState even = apply(op, basis(space, 0, Pol::kV));
  CHECK(std::abs(even.amp(0, Pol::kV) - Complex{1.0, 0.0}) < kTol);
  SinglePhotonState odd = apply(op, basis(space, -1, Pol::kH));
  CHECK(std::abs(odd.amp(-1, Pol::kH) - std::exp(Complex{0.0, phi})) <
        kTol);
}

TEST_CASE("parity sorter routes by charge parity") {
  ModeSpace space(OamWindow(2), 3);
  ElementOp op = parity_sorter(space, 0, 1, 2);
  SinglePhotonState even = apply(op, basis(space, 2, Pol::kH, 0));
  CHECK(even.path_weight(1) == doctest::Approx(1.0));
  SinglePhotonState odd = apply(op, basis(space, -1, Pol::kV, 0));
  CHECK(odd.path_weight(2) == doctest::Approx(1.0));
  CHECK(std::abs(odd.amp(-1, Pol::kV, 2) - Complex{1.0, 0.0}) < kTol);
}

TEST_CASE("polarizing splitters route and merge") {
  ModeSpace space(OamWindow(1), 3);
  ElementOp split = pbs(space, 0, 1, 2);
  CHECK(apply(split, basis(space, 0, Pol::kH, 0)).path_weight(1) ==
        doctest::Approx(1.0));
  CHECK(apply(split, basis(space, 0, Pol::kV, 0)).path_weight(2) ==
        doctest::Approx(1.0));

  ModeSpace merge_space(OamWindow(1), 4);
  ElementOp merge = pbs_junction(merge_space, 0, 1, 2, 3);
  // H transmits: input 1 -> output 2; V reflects: input 1 -> output 3.
  CHECK(apply(merge, basis(merge_space, 0, Pol::kH, 0)).path_weight(2) ==
        doctest::Approx(1.0));
  CHECK(apply(merge, basis(merge_space, 0, Pol::kV, 0)).path_weight(3) ==
        doctest::Approx(1.0));
  CHECK(apply(merge, basis(merge_space, 0, Pol::kH, 1)).path_weight(3) ==
        doctest::Approx(1.0));
  CHECK(apply(merge, basis(merge_space, 0, Pol::kV, 1)).path_weight(2) ==
        doctest::Approx(1.0));
}

TEST_CASE("50/50 splitter conventions") {
  ModeSpace space(OamWindow(1), 2);
  double r = 1.0 / std::sqrt(2.0);

  ElementOp sym = bs_5050(space, 0, 1, BsConvention::kSymmetricI);
  SinglePhotonState out = apply(sym, basis(space, 0, Pol::kH, 0));
  CHECK(std::abs(out.amp(0, Pol::kH, 0) - Complex{r, 0.0}) < kTol);
  CHECK(std::abs(out.amp(0, Pol::kH, 1) - Complex{0.0, r}) < kTol);

  ElementOp had = bs_5050(space, 0, 1, BsConvention::kHadamard);
  out = apply(had, basis(space, 0, Pol::kH, 1));
  CHECK(std::abs(out.amp(0, Pol::kH, 0) - Complex{r, 0.0}) < kTol);
  CHECK(std::abs(out.amp(0, Pol::kH, 1) - Complex{-r, 0.0}) < kTol);
}

TEST_CASE("wave plates implement their Jones matrices") {
  ModeSpace space(OamWindow(1), 1);
  // hwp(pi/4) swaps H and V; hwp(0) = diag(1, -1).
  SinglePhotonState swapped = apply(hwp(space, M_PI / 4.0),
                                    basis(space, 0, Pol::kH));
  CHECK(std::abs(swapped.amp(0, Pol::kV) - Complex{1.0, 0.0}) < kTol);
  SinglePhotonState flipped = apply(hwp(space, 0.0), basis(space, 0, Pol::kV));
  CHECK(std::abs(flipped.amp(0, Pol::kV) - Complex{-1.0, 0.0}) < kTol);

  // Half-wave plates square to the identity; two quarter-wave plates at the
  // same angle make a half-wave plate.
  for (double theta : {0.0, 0.3, 1.1, 2.0}) {
    Matrix h = hwp(space, theta).u;
    CHECK((h * h - Matrix::Identity(space.dim(), space.dim())).norm() <
          kTol);
    Matrix q = qwp(space, theta).u;
    CHECK((q * q - h).norm() < kTol);
  }

  // qwp(0) = diag(1, i).
  SinglePhotonState turned = apply(qwp(space, 0.0), basis(space, 0, Pol::kV));
  CHECK(std::abs(turned.amp(0, Pol::kV) - Complex{0.0, 1.0}) < kTol);
}

TEST_CASE("path phase marks a single path") {
  ModeSpace space(OamWindow(1), 2);
  double phi = 0.9;
  ElementOp op = path_phase(space, 1, phi);
  SinglePhotonState still = apply(op, basis(space, 0, Pol::kH, 0));
  CHECK(std::abs(still.amp(0, Pol::kH, 0) - Complex{1.0, 0.0}) < kTol);
  SinglePhotonState marked = apply(op, basis(space, 1, Pol::kV, 1));
  CHECK(std::abs(marked.amp(1, Pol::kV, 1) - std::exp(Complex{0.0, phi})) <
        kTol);
}

TEST_CASE("polarization rotation prepares the qubit") {
  ModeSpace space(OamWindow(1), 1);
  Complex alpha{0.6, 0.0}, beta{0.0, -0.8};
  ElementOp op = pol_rotation(space, alpha, beta);
  SinglePhotonState out = apply(op, basis(space, 1, Pol::kH));
  CHECK(std::abs(out.amp(1, Pol::kH) - alpha) < kTol);
  CHECK(std::abs(out.amp(1, Pol::kV) - beta) < kTol);
  CHECK_THROWS_AS(pol_rotation(space, Complex{1.0, 0.0}, Complex{0.5, 0.0}),
                  InvalidArgumentError);
}

TEST_CASE("scoped elements leave other paths alone") {
  ModeSpace space(OamWindow(2), 2);
  ElementOp op = hwp(space, M_PI / 4.0, 1);
  SinglePhotonState untouched = apply(op, basis(space, 0, Pol::kH, 0));
  CHECK(std::abs(untouched.amp(0, Pol::kH, 0) - Complex{1.0, 0.0}) < kTol);
  SinglePhotonState swapped = apply(op, basis(space, 0, Pol::kH, 1));
  CHECK(std::abs(swapped.amp(0, Pol::kV, 1) - Complex{1.0, 0.0}) < kTol);
}

TEST_CASE("composition applies left to right") {
  ModeSpace space(OamWindow(1), 2);
  ElementOp first = hwp(space, M_PI / 4.0, 0);   // H <-> V on path 0
  ElementOp second = pbs(space, 0, 0, 1);        // then split by polarization
  ElementOp both = compose({first, second});
  SinglePhotonState out = apply(both, basis(space, 0, Pol::kH, 0));
  // H flips to V, so the splitter sends it to path 1.
  CHECK(out.path_weight(1) == doctest::Approx(1.0));
  CHECK((both.u - second.u * first.u).norm() < kTol);
}

TEST_CASE("composition pulls guards back to reachable inputs") {
  ModeSpace space(OamWindow(2), 2);
  // Sort parity from path 0, then reflect only the odd arm (path 1): the
  // dove guard on (2, path 1) is unreachable from the entry, but odd
  // charges entering path 0 do reach the dove, so no entry guard appears;
  // the guard that survives is the direct path-1 top charge.
  ElementOp sorter = parity_sorter(space, 0, 0, 1);
  ElementOp dove = dove_prism(space, 1);
  ElementOp both = compose({sorter, dove});
  REQUIRE(!dove.guarded.empty());
  // Entry (path 0) top charge 2 is even: it stays on path 0, never meets
  // the dove, so it must not be guarded in the composite.
  SinglePhotonState top_even = basis(space, 2, Pol::kH, 0);
  CHECK_NOTHROW(apply(both, top_even));
  // A state fed straight into the dove arm at the top charge is guarded.
  CHECK_THROWS_AS(apply(both, basis(space, 2, Pol::kH, 1)),
                  SupportOverflowError);
}

TEST_CASE("apply on densities conjugates the unitary") {
  ModeSpace space(OamWindow(1), 1);
  ElementOp op = hwp(space, M_PI / 4.0);
  SinglePhotonState psi = basis(space, 0, Pol::kH);
  DensityMatrix rho = apply(op, pure_density(psi));
  CHECK(fidelity(rho, apply(op, psi)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("photon-wise application matches tensor factors") {
  ModeSpace space(OamWindow(2), 1);
  SinglePhotonState a = basis(space, 0, Pol::kH);
  SinglePhotonState b = basis(space, 1, Pol::kV);
  TwoPhotonState ab = tensor(a, b);
  ElementOp op = dp_sph(space);

  TwoPhotonState on_a = apply_to_photon(op, Photon::kA, ab);
  CHECK(std::abs(inner(on_a, tensor(apply(op, a), b)) -
                 Complex{1.0, 0.0}) < kTol);
  TwoPhotonState on_b = apply_to_photon(op, Photon::kB, ab);
  CHECK(std::abs(inner(on_b, tensor(a, apply(op, b))) -
                 Complex{1.0, 0.0}) < kTol);
}

TEST_CASE("guarded photon application raises on bad support") {
  ModeSpace space(OamWindow(1), 1);  // charges 0, 1
  ElementOp op = spiral_phase(space, 1);  // guards charge 1
  SinglePhotonState ok = basis(space, 0, Pol::kH);
  SinglePhotonState bad = basis(space, 1, Pol::kH);
  CHECK_NOTHROW(apply_to_photon(op, Photon::kA, tensor(ok, bad)));
  CHECK_THROWS_AS(apply_to_photon(op, Photon::kB, tensor(ok, bad)),
                  SupportOverflowError);
}

}  // TEST_SUITE
