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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qevo/errors.hpp"
#include "qevo/rng.hpp"
#include "qevo/tolerances.hpp"

namespace qevo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm();
}

/// ||m - m^dagger||_F.
inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

/// Column-stacking vectorization and its inverse. vec(AXB) = (B^T (x) A) vec(X).
inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw Error(errc::dimension_mismatch, "unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// ---------------------------------------------------------------------------
// Dense complex kernels
// ---------------------------------------------------------------------------

struct HermitianEig {
  RealVector values;  // descending
  Matrix vectors;     // columns matching values
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// The input is symmetrized as (m + m^dagger)/2 before factoring; a
/// hermiticity defect above tolerances().hermiticity_tol is rejected.
HermitianEig hermitian_eig(const Matrix& m);

/// True iff the minimum eigenvalue is >= -tol. Requires m Hermitian within tol.
bool is_psd(const Matrix& m, double tol);
bool is_psd(const Matrix& m);

/// Principal square root of a PSD matrix. Negative eigenvalues within the
/// PSD tolerance are clipped to zero before the root.
Matrix matrix_sqrt_psd(const Matrix& m);

/// m^{-1/2} restricted to the support: eigenvalues >= cutoff map to
/// lambda^{-1/2}, the rest to zero.
Matrix support_pinv_sqrt(const Matrix& m, double cutoff);
Matrix support_pinv_sqrt(const Matrix& m);

/// Projector onto the support (eigenvalues >= cutoff) of a PSD matrix.
Matrix support_projector(const Matrix& m, double cutoff);

enum class Subsystem { a, b };

/// Partial trace of an operator on C^{dim_a} (x) C^{dim_b}, keeping the
/// named factor. Tensor ordering is (first factor (x) second factor)
/// throughout the library.
Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Subsystem keep);

/// Kronecker product, (a (x) b)[(i*rb + k), (j*cb + l)] = a(i,j) * b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

/// Permutation unitary with SWAP (u (x) v) = v (x) u for u in C^{dim_a},
/// v in C^{dim_b}. Shape (dim_b*dim_a) x (dim_a*dim_b).
Matrix swap_operator(Index dim_a, Index dim_b);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the R
/// diagonal phase-normalized.
Matrix haar_random_unitary(Index d, Rng& rng);
Matrix haar_random_unitary(Index d, std::uint64_t seed);

/// Unnormalized maximally entangled vector sum_m e_m (x) e_m in C^{d^2}.
Vector vec_identity(Index d);

/// Matrix of iid standard complex Gaussians.
Matrix ginibre(Index rows, Index cols, Rng& rng);

/// Global-phase convention used for extracted unitaries and eigenvectors:
/// the first entry (row-major scan) with modulus above the threshold is
/// rotated to the positive real axis.
Matrix phase_fixed(Matrix m, double threshold = 1e-6);
Vector phase_fixed(Vector v, double threshold = 1e-6);

}  // namespace qevo
