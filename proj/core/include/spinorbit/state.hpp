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

#ifndef SPINORBIT_STATE_HPP_
#define SPINORBIT_STATE_HPP_

#include "spinorbit/types.hpp"
#include "spinorbit/window.hpp"

namespace spinorbit {

// Discrete mode space of one photon: OAM charge x polarization x path.
//
// Basis order is lexicographic in (charge ascending, H before V, path
// ascending): index = (index_of(q) * 2 + pol) * n_paths + path. Every state
// and operator in the library uses this order.
struct ModeSpace {
  OamWindow window;
  int n_paths = 1;

  ModeSpace(OamWindow w, int paths);

  int dim() const { return window.size() * 2 * n_paths; }

  int index(int q, Pol pol, int path) const;

  struct Mode {
    int q;
    Pol pol;
    int path;
  };
  Mode mode_at(int index) const;

  // The same window with a different number of paths.
  ModeSpace with_paths(int paths) const { return ModeSpace(window, paths); }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;
};

// Pure state of a single photon, stored as a dense amplitude vector over a
// ModeSpace. Not automatically normalized; callers that need a normalized
// state call normalize() or check is_normalized().
struct SinglePhotonState {
  ModeSpace space;
  Vector amps;

  // Zero state on the given space.
  explicit SinglePhotonState(ModeSpace s);
  SinglePhotonState(ModeSpace s, Vector a);

  Complex& amp(int q, Pol pol, int path = 0);
  Complex amp(int q, Pol pol, int path = 0) const;

  double norm() const;
  bool is_normalized(double tol = kTol) const;
  // Throws InvalidArgumentError on a (numerically) zero vector.
  SinglePhotonState& normalize();

  // Embed into a space with more paths, keeping path labels.
  SinglePhotonState with_paths(int paths) const;

  // Total probability weight on one path.
  double path_weight(int path) const;
};

// <a|b>; conjugate-linear in the first argument. Throws ShapeMismatchError
// unless both states share a space.
Complex inner(const SinglePhotonState& a, const SinglePhotonState& b);

// |<a|b>|^2 between normalized pure states.
double overlap(const SinglePhotonState& a, const SinglePhotonState& b);

// Pure state of two photons A and B over the tensor product of two mode
// spaces that share one OAM window. Amplitudes are stored A-major:
// index = index_A * dim_B + index_B.
struct TwoPhotonState {
  ModeSpace space_a;
  ModeSpace space_b;
  Vector amps;

  TwoPhotonState(ModeSpace a, ModeSpace b);
  TwoPhotonState(ModeSpace a, ModeSpace b, Vector v);

  int dim() const { return space_a.dim() * space_b.dim(); }
  int index(int ia, int ib) const { return ia * space_b.dim() + ib; }

  Complex& amp(int ia, int ib) { return amps(index(ia, ib)); }
  Complex amp(int ia, int ib) const { return amps(index(ia, ib)); }

  double norm() const;
  bool is_normalized(double tol = kTol) const;
  TwoPhotonState& normalize();

  // View of the amplitudes as a dim_A x dim_B matrix (row = A index).
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
  as_matrix() const;

  // Embed photon A (or B) into a space with more paths.
  TwoPhotonState with_paths_a(int paths) const;
  TwoPhotonState with_paths_b(int paths) const;
};

// |psi_a> (x) |psi_b>.
TwoPhotonState tensor(const SinglePhotonState& a, const SinglePhotonState& b);

Complex inner(const TwoPhotonState& a, const TwoPhotonState& b);

}  // namespace spinorbit

#endif  // SPINORBIT_STATE_HPP_
