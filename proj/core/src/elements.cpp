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

#include "spinorbit/elements.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

bool is_even(int q) { return (q % 2) == 0; }

void require_angle(double value, const char* who) {
  if (!std::isfinite(value)) {
    throw InvalidArgumentError(std::string(who) + ": angle is not finite");
  }
}

void require_path(const ModeSpace& space, int path, const char* who) {
  if (path == kAllPaths) return;
  if (path < 0 || path >= space.n_paths) {
    throw InvalidArgumentError(std::string(who) + ": path " +
                               std::to_string(path) + " outside [0, " +
                               std::to_string(space.n_paths) + ")");
  }
}

bool in_scope(int path, int scope) {
  return scope == kAllPaths || path == scope;
}

// Completes a partial path map to a full permutation, keeping every
// untouched path fixed when possible and pairing the remainder in
// ascending order. Returns image[path].
std::vector<int> complete_permutation(
    int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  for (auto [from, to] : pairs) {
    if (image[from] != -1) {
      throw InvalidArgumentError("path map assigns path " +
                                 std::to_string(from) + " twice");
    }
    if (used[to]) {
      throw InvalidArgumentError("path map targets path " +
                                 std::to_string(to) + " twice");
    }
    image[from] = to;
    used[to] = true;
  }
  for (int p = 0; p < n; ++p) {
    if (image[p] == -1 && !used[p]) {
      image[p] = p;
      used[p] = true;
    }
  }
  std::vector<int> leftover_targets;
  for (int p = 0; p < n; ++p) {
    if (!used[p]) leftover_targets.push_back(p);
  }
  int next = 0;
  for (int p = 0; p < n; ++p) {
    if (image[p] == -1) image[p] = leftover_targets[next++];
  }
  return image;
}

// An operator acting only on paths, one permutation per (parity, pol)
// sector. `sector(q, pol)` returns the path image.
template <typename SectorFn>
ElementOp path_permutation_op(const ModeSpace& space, SectorFn sector,
                              std::string label) {
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {},
               std::move(label)};
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    const std::vector<int>& image = sector(m.q, m.pol);
    op.u(space.index(m.q, m.pol, image[m.path]), i) = 1.0;
  }
  return op;
}

// An operator acting only on polarization, per (q, path): a 2x2 Jones
// matrix on (H, V), identity outside the path scope.
ElementOp jones_op(const ModeSpace& space, const QubitMatrix& jones,
                   int path_scope, std::string label) {
  require_path(space, path_scope, label.c_str());
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {},
               std::move(label)};
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    if (!in_scope(m.path, path_scope)) {
      op.u(i, i) = 1.0;
      continue;
    }
    int col = static_cast<int>(m.pol);
    op.u(space.index(m.q, Pol::kH, m.path), i) = jones(0, col);
    op.u(space.index(m.q, Pol::kV, m.path), i) = jones(1, col);
  }
  return op;
}

}  // namespace

const char* to_string(BsConvention c) {
  return c == BsConvention::kSymmetricI ? "symmetric_i" : "hadamard";
}

BsConvention bs_convention_from_string(const std::string& name) {
  if (name == "symmetric_i") return BsConvention::kSymmetricI;
  if (name == "hadamard") return BsConvention::kHadamard;
  throw InvalidArgumentError("unknown splitter convention '" + name + "'");
}

ElementOp identity_op(const ModeSpace& space) {
  return ElementOp{space, Matrix::Identity(space.dim(), space.dim()), {},
                   "identity"};
}

ElementOp dove_prism(const ModeSpace& space, int path) {
  require_path(space, path, "dove");
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {}, "dove"};
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    if (!in_scope(m.path, path) || space.window.contains(-m.q)) {
      int q_out = in_scope(m.path, path) ? -m.q : m.q;
      op.u(space.index(q_out, m.pol, m.path), i) = 1.0;
    } else {
      // Top charge K has no reflection partner -K inside the window; keep
      // it fixed so the matrix stays unitary, and guard the input.
      op.u(i, i) = 1.0;
      op.guarded.push_back(i);
    }
  }
  return op;
}

ElementOp spiral_phase(const ModeSpace& space, int charge, int path) {
  if (charge != 1 && charge != -1) {
    throw InvalidArgumentError("spiral phase step must be +1 or -1, got " +
                               std::to_string(charge));
  }
  require_path(space, path, "sph");
  std::string label = charge == 1 ? "sph(+1)" : "sph(-1)";
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {},
               std::move(label)};
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    if (!in_scope(m.path, path)) {
      op.u(i, i) = 1.0;
      continue;
    }
    int q_out = m.q + charge;
    if (!space.window.contains(q_out)) {
      // Cyclic completion: the shifted-out edge charge re-enters at the
      // opposite edge. Unitary, but physically meaningless — guarded.
      q_out = charge == 1 ? space.window.lowest() : space.window.highest();
      op.guarded.push_back(i);
    }
    op.u(space.index(q_out, m.pol, m.path), i) = 1.0;
  }
  return op;
}

ElementOp dp_sph(const ModeSpace& space, int path) {
  require_path(space, path, "dp_sph");
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {}, "dp_sph"};
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    int q_out = in_scope(m.path, path) ? OamWindow::partner(m.q) : m.q;
    op.u(space.index(q_out, m.pol, m.path), i) = 1.0;
  }
  return op;
}

ElementOp parity_phase(const ModeSpace& space, double phi, int path) {
  require_angle(phi, "parity_phase");
  require_path(space, path, "parity_phase");
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {},
               "parity_phase"};
  Complex odd_phase = std::polar(1.0, phi);
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    bool hit = in_scope(m.path, path) && !is_even(m.q);
    op.u(i, i) = hit ? odd_phase : Complex{1.0, 0.0};
  }
  return op;
}

ElementOp parity_sorter(const ModeSpace& space, int path_in, int path_even,
                        int path_odd) {
  require_path(space, path_in, "sorter");
  require_path(space, path_even, "sorter");
  require_path(space, path_odd, "sorter");
  if (path_even == path_odd) {
    throw InvalidArgumentError("sorter outputs must differ");
  }
  std::vector<int> even_image =
      complete_permutation(space.n_paths, {{path_in, path_even}});
  std::vector<int> odd_image =
      complete_permutation(space.n_paths, {{path_in, path_odd}});
  return path_permutation_op(
      space,
      [&](int q, Pol) -> const std::vector<int>& {
        return is_even(q) ? even_image : odd_image;
      },
      "sorter");
}

ElementOp pbs(const ModeSpace& space, int path_in, int path_h, int path_v) {
  require_path(space, path_in, "pbs");
  require_path(space, path_h, "pbs");
  require_path(space, path_v, "pbs");
  if (path_h == path_v) {
    throw InvalidArgumentError("pbs outputs must differ");
  }
  std::vector<int> h_image =
      complete_permutation(space.n_paths, {{path_in, path_h}});
  std::vector<int> v_image =
      complete_permutation(space.n_paths, {{path_in, path_v}});
  return path_permutation_op(
      space,
      [&](int, Pol pol) -> const std::vector<int>& {
        return pol == Pol::kH ? h_image : v_image;
      },
      "pbs");
}

ElementOp pbs_junction(const ModeSpace& space, int in1, int in2, int out1,
                       int out2) {
  require_path(space, in1, "pbs_junction");
  require_path(space, in2, "pbs_junction");
  require_path(space, out1, "pbs_junction");
  require_path(space, out2, "pbs_junction");
  if (in1 == in2 || out1 == out2) {
    throw InvalidArgumentError("pbs_junction ports must differ");
  }
  // H transmits, V reflects.
  std::vector<int> h_image =
      complete_permutation(space.n_paths, {{in1, out1}, {in2, out2}});
  std::vector<int> v_image =
      complete_permutation(space.n_paths, {{in1, out2}, {in2, out1}});
  return path_permutation_op(
      space,
      [&](int, Pol pol) -> const std::vector<int>& {
        return pol == Pol::kH ? h_image : v_image;
      },
      "pbs_junction");
}

ElementOp bs_5050(const ModeSpace& space, int path_1, int path_2,
                  BsConvention convention) {
  require_path(space, path_1, "bs");
  require_path(space, path_2, "bs");
  if (path_1 == path_2) {
    throw InvalidArgumentError("bs ports must differ");
  }
  const double r = 1.0 / std::sqrt(2.0);
  Complex m11{r, 0.0}, m12, m21, m22;
  if (convention == BsConvention::kSymmetricI) {
    m12 = m21 = Complex{0.0, r};
    m22 = Complex{r, 0.0};
  } else {
    m12 = m21 = Complex{r, 0.0};
    m22 = Complex{-r, 0.0};
  }
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {}, "bs"};
  for (int i = 0; i < space.dim(); ++i) {
    ModeSpace::Mode m = space.mode_at(i);
    if (m.path == path_1) {
      op.u(space.index(m.q, m.pol, path_1), i) = m11;
      op.u(space.index(m.q, m.pol, path_2), i) = m21;
    } else if (m.path == path_2) {
      op.u(space.index(m.q, m.pol, path_1), i) = m12;
      op.u(space.index(m.q, m.pol, path_2), i) = m22;
    } else {
      op.u(i, i) = 1.0;
    }
  }
  return op;
}

ElementOp hwp(const ModeSpace& space, double theta, int path) {
  require_angle(theta, "hwp");
  double c = std::cos(2.0 * theta);
  double s = std::sin(2.0 * theta);
  QubitMatrix jones;
  jones << Complex{c, 0.0}, Complex{s, 0.0},  //
      Complex{s, 0.0}, Complex{-c, 0.0};
  return jones_op(space, jones, path, "hwp");
}

ElementOp qwp(const ModeSpace& space, double theta, int path) {
  require_angle(theta, "qwp");
  double c = std::cos(theta);
  double s = std::sin(theta);
  // R(theta) diag(1, i) R(-theta).
  QubitMatrix jones;
  jones << Complex{c * c, s * s}, Complex{c * s, -c * s},  //
      Complex{c * s, -c * s}, Complex{s * s, c * c};
  return jones_op(space, jones, path, "qwp");
}

ElementOp path_phase(const ModeSpace& space, int path, double phi) {
  require_angle(phi, "delay");
  if (path == kAllPaths) {
    throw InvalidArgumentError("delay needs a concrete path");
  }
  require_path(space, path, "delay");
  ElementOp op{space, Matrix::Zero(space.dim(), space.dim()), {}, "delay"};
  Complex phase = std::polar(1.0, phi);
  for (int i = 0; i < space.dim(); ++i) {
    op.u(i, i) = space.mode_at(i).path == path ? phase : Complex{1.0, 0.0};
  }
  return op;
}

ElementOp pol_rotation(const ModeSpace& space, Complex alpha, Complex beta,
                       int path) {
  double n = std::norm(alpha) + std::norm(beta);
  if (std::abs(n - 1.0) > kTol) {
    throw InvalidArgumentError(
        "pol_rotation amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  }
  QubitMatrix jones;
  jones << alpha, -std::conj(beta),  //
      beta, std::conj(alpha);
  return jones_op(space, jones, path, "pol_rotation");
}

ElementOp compose(std::span<const ElementOp> ops) {
  if (ops.empty()) {
    throw InvalidArgumentError("compose needs at least one element");
  }
  const ModeSpace& space = ops.front().space;
  int dim = space.dim();
  Matrix cum = Matrix::Identity(dim, dim);
  std::vector<int> guards;
  std::string label;
  for (const ElementOp& op : ops) {
    if (!(op.space == space)) {
      throw ShapeMismatchError("composed elements live on different spaces");
    }
    // Pull this stage's guards back to the composite input: input i is
    // affected iff it reaches a guarded mode r through the stages so far.
    for (int r : op.guarded) {
      for (int i = 0; i < dim; ++i) {
        if (std::abs(cum(r, i)) > kTol) guards.push_back(i);
      }
    }
    cum = op.u * cum;
    if (!label.empty()) label += ",";
    label += op.label;
  }
  std::sort(guards.begin(), guards.end());
  guards.erase(std::unique(guards.begin(), guards.end()), guards.end());
  return ElementOp{space, std::move(cum), std::move(guards),
                   std::move(label)};
}

ElementOp compose(std::initializer_list<ElementOp> ops) {
  return compose(std::span<const ElementOp>(ops.begin(), ops.size()));
}

bool is_unitary(const ElementOp& op, double tol) {
  int dim = op.space.dim();
  Matrix gram = op.u.adjoint() * op.u;
  return (gram - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
}

namespace {

[[noreturn]] void throw_support_overflow(const ElementOp& op,
                                         const ModeSpace::Mode& m,
                                         double weight) {
  throw SupportOverflowError(
      "element '" + op.label + "' has no in-window action on mode (q=" +
      std::to_string(m.q) + ", " + to_string(m.pol) +
      ", path=" + std::to_string(m.path) +
      "), which carries amplitude " + std::to_string(weight));
}

}  // namespace

void check_guards(const ElementOp& op, const Vector& amps, double tol) {
  for (int i : op.guarded) {
    double a = std::abs(amps(i));
    if (a > tol) {
      throw_support_overflow(op, op.space.mode_at(i), a);
    }
  }
}

SinglePhotonState apply(const ElementOp& op, const SinglePhotonState& psi) {
  if (!(op.space == psi.space)) {
    throw ShapeMismatchError("element and state live on different spaces");
  }
  check_guards(op, psi.amps);
  return SinglePhotonState(psi.space, op.u * psi.amps);
}

DensityMatrix apply(const ElementOp& op, const DensityMatrix& rho) {
  if (!(op.space == rho.space)) {
    throw ShapeMismatchError("element and state live on different spaces");
  }
  for (int i : op.guarded) {
    double p = rho.mat(i, i).real();
    if (p > kTol) {
      throw_support_overflow(op, op.space.mode_at(i), p);
    }
  }
  return DensityMatrix(rho.space, op.u * rho.mat * op.u.adjoint());
}

TwoPhotonState apply_to_photon(const ElementOp& op, Photon photon,
                               const TwoPhotonState& psi) {
  const ModeSpace& target =
      photon == Photon::kA ? psi.space_a : psi.space_b;
  if (!(op.space == target)) {
    throw ShapeMismatchError("element and photon live on different spaces");
  }
  auto m = psi.as_matrix();
  // Guard check on the photon's marginal amplitude.
  for (int i : op.guarded) {
    double w = photon == Photon::kA ? m.row(i).norm() : m.col(i).norm();
    if (w > kTol) {
      throw_support_overflow(op, op.space.mode_at(i), w);
    }
  }
  TwoPhotonState out(psi.space_a, psi.space_b);
  Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>>
      result(out.amps.data(), psi.space_a.dim(), psi.space_b.dim());
  if (photon == Photon::kA) {
    result = op.u * m;
  } else {
    result = m * op.u.transpose();
  }
  return out;
}

}  // namespace spinorbit
