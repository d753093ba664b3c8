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

#ifndef SPINORBIT_ELEMENTS_HPP_
#define SPINORBIT_ELEMENTS_HPP_

#include <span>
#include <string>
#include <vector>

#include "spinorbit/density.hpp"
#include "spinorbit/state.hpp"
#include "spinorbit/types.hpp"

namespace spinorbit {

// Pass this as `path` to act on every path.
inline constexpr int kAllPaths = -1;

// Which photon of a two-photon state an element acts on.
enum class Photon { kA, kB };

// Sign convention of the 50/50 beam splitter.
//  kSymmetricI: (1/sqrt2) [[1, i], [i, 1]]  (reflection picks up i)
//  kHadamard:   (1/sqrt2) [[1, 1], [1, -1]]
enum class BsConvention { kSymmetricI, kHadamard };

const char* to_string(BsConvention c);
BsConvention bs_convention_from_string(const std::string& name);

// A linear optical element as a unitary on a single-photon ModeSpace.
//
// Elements whose physical action would leave the truncated OAM window
// (image reflection at the top charge, charge shift at the edge) are
// completed to a unitary inside the window; the affected input basis
// vectors are listed in `guarded`. Applying an op to a state with more than
// kTol amplitude on a guarded mode throws SupportOverflowError: the result
// would be a truncation artifact rather than physics.
struct ElementOp {
  ModeSpace space;
  Matrix u;
  std::vector<int> guarded;  // sorted basis indices
  std::string label;
};

ElementOp identity_op(const ModeSpace& space);

// Image reflection q -> -q. The top charge K has no partner -K in the
// window; it is fixed (guarded).
ElementOp dove_prism(const ModeSpace& space, int path = kAllPaths);

// Spiral phase element adding `charge` (+1 or -1) to q. Completed
// cyclically (for +1 the top charge wraps to the bottom, guarded).
ElementOp spiral_phase(const ModeSpace& space, int charge = 1,
                       int path = kAllPaths);

// Exact involution q -> 1-q (the reflection-then-shift compound). Closed on
// the window, so nothing is guarded. Flips OAM parity on every pair.
ElementOp dp_sph(const ModeSpace& space, int path = kAllPaths);

// diag(1, e^{i phi}) on the (even, odd) parity factor.
ElementOp parity_phase(const ModeSpace& space, double phi,
                       int path = kAllPaths);

// Routes even-parity charges in -> path_even and odd in -> path_odd by
// swapping the corresponding path pair. path_in == path_even is allowed
// (even component stays put).
ElementOp parity_sorter(const ModeSpace& space, int path_in, int path_even,
                        int path_odd);

// Polarizing splitter, one input: H in -> path_h, V in -> path_v.
ElementOp pbs(const ModeSpace& space, int path_in, int path_h, int path_v);

// Polarizing splitter, two inputs: H transmits (in1 -> out1, in2 -> out2),
// V reflects (in1 -> out2, in2 -> out1). In-place when out == in.
ElementOp pbs_junction(const ModeSpace& space, int in1, int in2, int out1,
                       int out2);

// 50/50 splitter mixing two paths, identity on OAM and polarization.
ElementOp bs_5050(const ModeSpace& space, int path_1, int path_2,
                  BsConvention convention = BsConvention::kSymmetricI);

// Half-wave plate at angle theta to the H axis:
// [[cos 2theta, sin 2theta], [sin 2theta, -cos 2theta]] on (H, V).
ElementOp hwp(const ModeSpace& space, double theta, int path = kAllPaths);

// Quarter-wave plate at angle theta: R(theta) diag(1, i) R(-theta).
ElementOp qwp(const ModeSpace& space, double theta, int path = kAllPaths);

// Phase e^{i phi} on one path.
ElementOp path_phase(const ModeSpace& space, int path, double phi);

// Generic polarization map |H> -> alpha|H> + beta|V> (and the orthogonal
// completion on |V>); used to prepare input qubits. Throws unless
// |alpha|^2 + |beta|^2 = 1.
ElementOp pol_rotation(const ModeSpace& space, Complex alpha, Complex beta,
                       int path = kAllPaths);

// Product of a pipeline, applied left to right: compose({a, b}) = b * a.
// Guards of later stages are pulled back through earlier ones, so the
// composite flags exactly the inputs that would touch a guarded mode at any
// stage.
ElementOp compose(std::span<const ElementOp> ops);
ElementOp compose(std::initializer_list<ElementOp> ops);

bool is_unitary(const ElementOp& op, double tol = kTol);

// Throws SupportOverflowError if any guarded index of `op` carries more
// than tol amplitude (or tol probability, for density matrices).
void check_guards(const ElementOp& op, const Vector& amps, double tol = kTol);

SinglePhotonState apply(const ElementOp& op, const SinglePhotonState& psi);
DensityMatrix apply(const ElementOp& op, const DensityMatrix& rho);
TwoPhotonState apply_to_photon(const ElementOp& op, Photon photon,
                               const TwoPhotonState& psi);

}  // namespace spinorbit

#endif  // SPINORBIT_ELEMENTS_HPP_
