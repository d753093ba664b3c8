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

#include "spinorbit/state.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "spinorbit/errors.hpp"

namespace spinorbit {

ModeSpace::ModeSpace(OamWindow w, int paths) : window(w), n_paths(paths) {
  if (paths < 1) {
    throw InvalidArgumentError("mode space needs >= 1 path, got " +
                               std::to_string(paths));
  }
}

int ModeSpace::index(int q, Pol pol, int path) const {
  if (path < 0 || path >= n_paths) {
    throw InvalidArgumentError("path " + std::to_string(path) +
                               " outside [0, " + std::to_string(n_paths) +
                               ")");
  }
  return (window.index_of(q) * 2 + static_cast<int>(pol)) * n_paths + path;
}

ModeSpace::Mode ModeSpace::mode_at(int index) const {
  if (index < 0 || index >= dim()) {
    throw InvalidArgumentError("basis index " + std::to_string(index) +
                               " outside space of dimension " +
                               std::to_string(dim()));
  }
  Mode m;
  m.path = index % n_paths;
  int rest = index / n_paths;
  m.pol = static_cast<Pol>(rest % 2);
  m.q = window.charge_at(rest / 2);
  return m;
}

SinglePhotonState::SinglePhotonState(ModeSpace s)
    : space(s), amps(Vector::Zero(s.dim())) {}

SinglePhotonState::SinglePhotonState(ModeSpace s, Vector a)
    : space(s), amps(std::move(a)) {
  if (amps.size() != space.dim()) {
    throw ShapeMismatchError("amplitude vector of length " +
                             std::to_string(amps.size()) +
                             " does not fit space of dimension " +
                             std::to_string(space.dim()));
  }
}

Complex& SinglePhotonState::amp(int q, Pol pol, int path) {
  return amps(space.index(q, pol, path));
}

Complex SinglePhotonState::amp(int q, Pol pol, int path) const {
  return amps(space.index(q, pol, path));
}

double SinglePhotonState::norm() const { return amps.norm(); }

bool SinglePhotonState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

SinglePhotonState& SinglePhotonState::normalize() {
  double n = norm();
  if (n < kTol) {
    throw InvalidArgumentError("cannot normalize a zero state");
  }
  amps /= n;
  return *this;
}

SinglePhotonState SinglePhotonState::with_paths(int paths) const {
  if (paths < space.n_paths) {
    throw InvalidArgumentError("cannot shrink the path count");
  }
  SinglePhotonState out(space.with_paths(paths));
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    out.amp(m.q, m.pol, m.path) = amps(i);
  }
  return out;
}

double SinglePhotonState::path_weight(int path) const {
  double w = 0.0;
  for (int i = 0; i < space.dim(); ++i) {
    if (space.mode_at(i).path == path) {
      w += std::norm(amps(i));
    }
  }
  return w;
}

Complex inner(const SinglePhotonState& a, const SinglePhotonState& b) {
  if (!(a.space == b.space)) {
    throw ShapeMismatchError("inner product between different mode spaces");
  }
  return a.amps.dot(b.amps);
}

double overlap(const SinglePhotonState& a, const SinglePhotonState& b) {
  return std::norm(inner(a, b));
}

TwoPhotonState::TwoPhotonState(ModeSpace a, ModeSpace b)
    : space_a(a), space_b(b), amps(Vector::Zero(a.dim() * b.dim())) {
  if (!(space_a.window == space_b.window)) {
    throw ShapeMismatchError("photons must share one OAM window");
  }
}

TwoPhotonState::TwoPhotonState(ModeSpace a, ModeSpace b, Vector v)
    : space_a(a), space_b(b), amps(std::move(v)) {
  if (!(space_a.window == space_b.window)) {
    throw ShapeMismatchError("photons must share one OAM window");
  }
  if (amps.size() != dim()) {
    throw ShapeMismatchError("two-photon amplitude vector of length " +
                             std::to_string(amps.size()) +
                             " does not fit joint dimension " +
                             std::to_string(dim()));
  }
}

double TwoPhotonState::norm() const { return amps.norm(); }

bool TwoPhotonState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

TwoPhotonState& TwoPhotonState::normalize() {
  double n = norm();
  if (n < kTol) {
    throw InvalidArgumentError("cannot normalize a zero state");
  }
  amps /= n;
  return *this;
}

Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>
TwoPhotonState::as_matrix() const {
  return {amps.data(), space_a.dim(), space_b.dim()};
}

TwoPhotonState TwoPhotonState::with_paths_a(int paths) const {
  TwoPhotonState out(space_a.with_paths(paths), space_b);
  int db = space_b.dim();
  for (int ia = 0; ia < space_a.dim(); ++ia) {
    ModeSpace::Mode m = space_a.mode_at(ia);
    int ja = out.space_a.index(m.q, m.pol, m.path);
    out.amps.segment(ja * db, db) = amps.segment(ia * db, db);
  }
  return out;
}

TwoPhotonState TwoPhotonState::with_paths_b(int paths) const {
  TwoPhotonState out(space_a, space_b.with_paths(paths));
  int db_old = space_b.dim();
  int db_new = out.space_b.dim();
  for (int ib = 0; ib < db_old; ++ib) {
    ModeSpace::Mode m = space_b.mode_at(ib);
    int jb = out.space_b.index(m.q, m.pol, m.path);
    for (int ia = 0; ia < space_a.dim(); ++ia) {
      out.amps(ia * db_new + jb) = amps(ia * db_old + ib);
    }
  }
  return out;
}

TwoPhotonState tensor(const SinglePhotonState& a, const SinglePhotonState& b) {
  TwoPhotonState out(a.space, b.space);
  int db = b.space.dim();
  for (int ia = 0; ia < a.space.dim(); ++ia) {
    out.amps.segment(ia * db, db) = a.amps(ia) * b.amps;
  }
  return out;
}

Complex inner(const TwoPhotonState& a, const TwoPhotonState& b) {
  if (!(a.space_a == b.space_a) || !(a.space_b == b.space_b)) {
    throw ShapeMismatchError("inner product between different mode spaces");
  }
  return a.amps.dot(b.amps);
}

}  // namespace spinorbit
