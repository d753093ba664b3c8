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

#include "spinorbit/density.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

void check_density(const Matrix& rho, double tol, const char* who) {
  if (rho.rows() != rho.cols()) {
    throw ShapeMismatchError(std::string(who) + ": matrix is not square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidArgumentError(std::string(who) + ": not Hermitian");
  }
  double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw InvalidArgumentError(std::string(who) + ": trace " +
                               std::to_string(tr) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho,
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw InvalidArgumentError(std::string(who) +
                               ": negative eigenvalue " +
                               std::to_string(solver.eigenvalues().minCoeff()));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ModeSpace s)
    : space(s), mat(Matrix::Zero(s.dim(), s.dim())) {}

DensityMatrix::DensityMatrix(ModeSpace s, Matrix m)
    : space(s), mat(std::move(m)) {
  if (mat.rows() != space.dim() || mat.cols() != space.dim()) {
    throw ShapeMismatchError("density matrix does not fit space dimension " +
                             std::to_string(space.dim()));
  }
}

double DensityMatrix::trace_real() const { return mat.trace().real(); }

double DensityMatrix::purity() const {
  return (mat * mat).trace().real();
}

void DensityMatrix::validate(double tol) const {
  check_density(mat, tol, "density matrix");
}

double DensityMatrix::path_weight(int path) const {
  double w = 0.0;
  for (int i = 0; i < space.dim(); ++i) {
    if (space.mode_at(i).path == path) {
      w += mat(i, i).real();
    }
  }
  return w;
}

DensityMatrix pure_density(const SinglePhotonState& psi) {
  return DensityMatrix(psi.space, psi.amps * psi.amps.adjoint());
}

DensityMatrix reduce_to_a(const TwoPhotonState& psi) {
  auto m = psi.as_matrix();
  return DensityMatrix(psi.space_a, m * m.adjoint());
}

DensityMatrix reduce_to_b(const TwoPhotonState& psi) {
  auto m = psi.as_matrix();
  // rho_B[i, j] = sum_a psi(a, i) conj(psi(a, j)) = conj(M^dagger M)[i, j].
  return DensityMatrix(psi.space_b, (m.adjoint() * m).conjugate());
}

Matrix partial_trace_a(const Matrix& joint, int dim_a, int dim_b) {
  if (joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b) {
    throw ShapeMismatchError("joint matrix does not factor as given");
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    out += joint.block(a * dim_b, a * dim_b, dim_b, dim_b);
  }
  return out;
}

Matrix partial_trace_b(const Matrix& joint, int dim_a, int dim_b) {
  if (joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b) {
    throw ShapeMismatchError("joint matrix does not factor as given");
  }
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      out(i, j) = joint.block(i * dim_b, j * dim_b, dim_b, dim_b)
                      .trace();
    }
  }
  return out;
}

double fidelity(const Matrix& rho, const Vector& target) {
  if (rho.rows() != target.size()) {
    throw ShapeMismatchError("fidelity target does not fit the state");
  }
  return (target.adjoint() * rho * target)(0, 0).real();
}

double fidelity(const DensityMatrix& rho, const SinglePhotonState& target) {
  if (!(rho.space == target.space)) {
    throw ShapeMismatchError("fidelity between different mode spaces");
  }
  return fidelity(rho.mat, target.amps);
}

double ParityQubit::purity() const { return (rho * rho).trace().real(); }

void ParityQubit::validate(double tol) const {
  check_density(rho, tol, "parity qubit");
}

double fidelity(const ParityQubit& rho, const Qubit& target) {
  return (target.adjoint() * rho.rho * target)(0, 0).real();
}

Matrix pairing_permutation(const OamWindow& window) {
  int k = window.half_width();
  Matrix perm = Matrix::Zero(2 * k, 2 * k);
  for (int p = 0; p < k; ++p) {
    int even = window.even_charge_of_pair(p);
    int odd = OamWindow::partner(even);
    perm(0 * k + p, window.index_of(even)) = 1.0;
    perm(1 * k + p, window.index_of(odd)) = 1.0;
  }
  return perm;
}

Matrix oam_marginal(const DensityMatrix& rho) {
  const ModeSpace& s = rho.space;
  int n = s.window.size();
  Matrix out = Matrix::Zero(n, n);
  // Trace out polarization and path: basis index = (q_idx*2 + pol)*n_paths
  // + path, so each q block is n_paths*2 consecutive "internal" labels.
  int internal = 2 * s.n_paths;
  for (int qi = 0; qi < n; ++qi) {
    for (int qj = 0; qj < n; ++qj) {
      Complex sum = 0.0;
      for (int t = 0; t < internal; ++t) {
        sum += rho.mat(qi * internal + t, qj * internal + t);
      }
      out(qi, qj) = sum;
    }
  }
  return out;
}

PairingDecomposition pairing_decomposition(const DensityMatrix& rho) {
  const OamWindow& window = rho.space.window;
  int k = window.half_width();
  Matrix perm = pairing_permutation(window);
  PairingDecomposition out;
  out.relabeled = perm * oam_marginal(rho) * perm.adjoint();
  out.parity.rho = partial_trace_b(out.relabeled, 2, k);
  out.pair_marginal = partial_trace_a(out.relabeled, 2, k);
  return out;
}

PairingDecomposition pairing_decomposition(const SinglePhotonState& psi) {
  return pairing_decomposition(pure_density(psi));
}

}  // namespace spinorbit
