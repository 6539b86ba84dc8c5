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

#include "qevo/linalg.hpp"

#include <cmath>
#include <string>

namespace qevo {

Tolerances& tolerances() {
  static Tolerances tol;
  return tol;
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::parse_error: return "ParseError";
    case errc::non_square: return "NonSquare";
    case errc::not_hermitian: return "NotHermitian";
    case errc::not_psd: return "NotPSD";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_trace: return "InvalidTrace";
    case errc::not_normalized: return "NotNormalized";
    case errc::not_unit_vector: return "NotUnitVector";
    case errc::zero_trace: return "ZeroTrace";
    case errc::invalid_kraus: return "InvalidKraus";
    case errc::not_cp: return "NotCP";
    case errc::empty_instrument: return "EmptyInstrument";
    case errc::invalid_instrument: return "InvalidInstrument";
    case errc::not_orthonormal: return "NotOrthonormal";
    case errc::incomplete_basis: return "Incomplete";
    case errc::not_projector: return "NotProjector";
    case errc::not_complete: return "NotComplete";
    case errc::not_orthogonal: return "NotOrthogonal";
    case errc::not_psd_effect: return "NotPSDEffect";
    case errc::not_normalized_povm: return "NotNormalizedPOVM";
    case errc::not_time_symmetric: return "NotTimeSymmetric";
    case errc::support_mismatch: return "SupportMismatch";
    case errc::not_channel: return "NotChannel";
    case errc::not_complementary: return "NotComplementary";
    case errc::mixed_kinds: return "MixedKinds";
    case errc::not_a_symmetry: return "NotASymmetry";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

int exit_code_for(errc code) {
  switch (code) {
    case errc::parse_error:
      return 2;
    case errc::not_time_symmetric:
    case errc::support_mismatch:
    case errc::not_channel:
    case errc::not_complementary:
      return 4;
    case errc::mixed_kinds:
    case errc::not_a_symmetry:
      return 5;
    default:
      return 3;
  }
}

HermitianEig hermitian_eig(const Matrix& m) {
  if (m.rows() != m.cols())
    throw Error(errc::non_square, "hermitian_eig expects a square matrix");
  double defect = hermiticity_defect(m);
  if (defect > tolerances().hermiticity_tol)
    throw Error(errc::not_hermitian,
                "hermiticity defect " + std::to_string(defect));
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(errc::convergence_failure, "eigensolver did not converge");
  HermitianEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

bool is_psd(const Matrix& m, double tol) {
  if (m.rows() != m.cols())
    throw Error(errc::non_square, "is_psd expects a square matrix");
  if (hermiticity_defect(m) > std::max(tol, tolerances().hermiticity_tol))
    throw Error(errc::not_hermitian, "is_psd expects a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success)
    throw Error(errc::convergence_failure, "eigensolver did not converge");
  return solver.eigenvalues().minCoeff() >= -tol;
}

bool is_psd(const Matrix& m) { return is_psd(m, tolerances().psd_tol); }

namespace {

// Shared spectral-function scaffold for the PSD kernels below.
Matrix psd_spectral_map(const Matrix& m, double floor_tol,
                        double (*f)(double, double), double param) {
  HermitianEig eig = hermitian_eig(m);
  if (eig.values.minCoeff() < -floor_tol)
    throw Error(errc::not_psd,
                "minimum eigenvalue " + std::to_string(eig.values.minCoeff()));
  RealVector mapped(eig.values.size());
  for (Index i = 0; i < eig.values.size(); ++i)
    mapped[i] = f(eig.values[i], param);
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

Matrix matrix_sqrt_psd(const Matrix& m) {
  return psd_spectral_map(
      m, tolerances().psd_tol,
      [](double x, double) { return x > 0.0 ? std::sqrt(x) : 0.0; }, 0.0);
}

Matrix support_pinv_sqrt(const Matrix& m, double cutoff) {
  return psd_spectral_map(
      m, tolerances().psd_tol,
      [](double x, double c) { return x >= c ? 1.0 / std::sqrt(x) : 0.0; },
      cutoff);
}

Matrix support_pinv_sqrt(const Matrix& m) {
  return support_pinv_sqrt(m, tolerances().support_cutoff);
}

Matrix support_projector(const Matrix& m, double cutoff) {
  return psd_spectral_map(
      m, tolerances().psd_tol,
      [](double x, double c) { return x >= c ? 1.0 : 0.0; }, cutoff);
}

Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b,
                     Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != m.cols() ||
      m.rows() != dim_a * dim_b)
    throw Error(errc::dimension_mismatch, "partial_trace: bad dimensions");
  if (keep == Subsystem::a) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        for (Index k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Index k = 0; k < dim_b; ++k)
    for (Index l = 0; l < dim_b; ++l)
      for (Index i = 0; i < dim_a; ++i)
        out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix swap_operator(Index dim_a, Index dim_b) {
  if (dim_a < 1 || dim_b < 1)
    throw Error(errc::dimension_mismatch, "swap_operator: dims must be >= 1");
  Matrix s = Matrix::Zero(dim_b * dim_a, dim_a * dim_b);
  for (Index i = 0; i < dim_a; ++i)
    for (Index k = 0; k < dim_b; ++k)
      s(k * dim_a + i, i * dim_b + k) = 1.0;
  return s;
}

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      g(i, j) = rng.complex_normal();
  return g;
}

Matrix haar_random_unitary(Index d, Rng& rng) {
  if (d < 1)
    throw Error(errc::dimension_mismatch, "haar_random_unitary: d >= 1");
  Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    Complex phase = std::abs(rii) > 0.0 ? rii / std::abs(rii) : Complex(1.0);
    q.col(i) *= phase;
  }
  return q;
}

Matrix haar_random_unitary(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_unitary(d, rng);
}

Vector vec_identity(Index d) {
  if (d < 1)
    throw Error(errc::dimension_mismatch, "vec_identity: d >= 1");
  Vector v = Vector::Zero(d * d);
  for (Index m = 0; m < d; ++m) v(m * d + m) = 1.0;
  return v;
}

Matrix phase_fixed(Matrix m, double threshold) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > threshold) {
        m *= std::conj(m(i, j)) / std::abs(m(i, j));
        return m;
      }
  return m;
}

Vector phase_fixed(Vector v, double threshold) {
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > threshold) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return v;
    }
  return v;
}

}  // namespace qevo
