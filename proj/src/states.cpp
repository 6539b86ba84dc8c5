// Copyright 2026 The qevo developers.
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

#include "qevo/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qevo {

DensityMatrix::DensityMatrix(Matrix m) : mat_(std::move(m)) {
  const Tolerances& tol = tolerances();
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
    throw Error(errc::non_square, "density matrix must be square");
  double hdefect = hermiticity_defect(mat_);
  if (hdefect > tol.hermiticity_tol)
    throw Error(errc::not_hermitian,
                "density matrix hermiticity defect " + std::to_string(hdefect));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (mat_ + mat_.adjoint()));
  if (solver.info() != Eigen::Success)
    throw Error(errc::convergence_failure, "density matrix eigensolver");
  double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd_tol)
    throw Error(errc::not_psd,
                "density matrix minimum eigenvalue " + std::to_string(min_eig));
  double tr = trace();
  if (tr < -tol.equality_tol || tr > 1.0 + tol.equality_tol)
    throw Error(errc::invalid_trace,
                "density matrix trace " + std::to_string(tr));
}

bool DensityMatrix::is_normalized() const {
  return std::abs(trace() - 1.0) <= tolerances().equality_tol;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw Error(errc::dimension_mismatch, "fidelity: dimension mismatch");
  if (!rho.is_normalized() || !sigma.is_normalized())
    throw Error(errc::not_normalized, "fidelity expects normalized states");
  Matrix product = matrix_sqrt_psd(rho.matrix()) * matrix_sqrt_psd(sigma.matrix());
  double nuclear = product.jacobiSvd().singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

double ray_product(const Vector& psi, const Vector& phi) {
  if (psi.size() != phi.size())
    throw Error(errc::dimension_mismatch, "ray_product: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-9 || std::abs(phi.norm() - 1.0) > 1e-9)
    throw Error(errc::not_unit_vector, "ray_product expects unit vectors");
  return std::min(std::abs(psi.dot(phi)), 1.0);
}

DensityMatrix maximally_mixed(Index d) {
  if (d < 1)
    throw Error(errc::dimension_mismatch, "maximally_mixed: d >= 1");
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix condition(const DensityMatrix& rho) {
  double tr = rho.trace();
  if (tr <= tolerances().support_cutoff)
    throw Error(errc::zero_trace, "conditioning on a zero-probability event");
  return DensityMatrix(rho.matrix() / tr);
}

Vector purify(const DensityMatrix& rho) {
  if (!rho.is_normalized())
    throw Error(errc::not_normalized, "purify expects a normalized state");
  HermitianEig eig = hermitian_eig(rho.matrix());
  const Index d = rho.dim();
  Vector psi = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    double lambda = std::max(eig.values[i], 0.0);
    if (lambda == 0.0) continue;
    Vector col = phase_fixed(Vector(eig.vectors.col(i)));
    // v_i (x) e_i sits at indices m*d + i.
    for (Index m = 0; m < d; ++m) psi[m * d + i] += std::sqrt(lambda) * col[m];
  }
  psi.normalize();
  return psi;
}

DensityMatrix random_density(Index d, Rng& rng) {
  Matrix g = ginibre(d, d, rng);
  Matrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

DensityMatrix random_density(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rng);
}

Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

}  // namespace qevo
