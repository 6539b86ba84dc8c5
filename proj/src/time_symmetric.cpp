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

#include "qevo/time_symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qevo {

namespace {

double max_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

TSReport ts_classify(const CpMap& q) {
  const Tolerances& tol = tolerances();
  Matrix tin = partial_trace(q.choi, q.d_out, q.d_in, Subsystem::b);
  Matrix tout = partial_trace(q.choi, q.d_out, q.d_in, Subsystem::a);
  Matrix eye_in = Matrix::Identity(q.d_in, q.d_in);
  Matrix eye_out = Matrix::Identity(q.d_out, q.d_out);
  Matrix out_state = tout / static_cast<double>(q.d_in);  // Q(I/d_in)

  TSReport r;
  r.defect_in = std::max(0.0, max_eigenvalue(tin - eye_in));
  r.defect_out = std::max(
      0.0, max_eigenvalue(out_state - eye_out / static_cast<double>(q.d_out)));
  r.is_ts_operation =
      r.defect_in <= tol.psd_tol && r.defect_out <= tol.psd_tol;
  r.is_ts_channel =
      (tin - eye_in).norm() <= tol.equality_tol &&
      (out_state - eye_out / static_cast<double>(q.d_out)).norm() <=
          tol.equality_tol;
  return r;
}

TsInstrumentReport validate_ts_instrument(const Instrument& inst) {
  if (inst.branches.empty())
    throw Error(errc::empty_instrument, "instrument has no branches");
  const Index d_in = inst.d_in(), d_out = inst.d_out();
  TsInstrumentReport report;
  Matrix sum = Matrix::Zero(d_out * d_in, d_out * d_in);
  for (size_t i = 0; i < inst.branches.size(); ++i) {
    const QuantumOperation& q = inst.branches[i];
    if (q.d_in() != d_in || q.d_out() != d_out)
      throw Error(errc::dimension_mismatch, "branch dimensions differ");
    report.branch_reports.push_back(ts_classify(q.cp()));
    if (!report.branch_reports.back().is_ts_operation &&
        report.first_invalid_branch < 0)
      report.first_invalid_branch = static_cast<int>(i);
    sum += q.choi();
  }
  report.sum_report = ts_classify(CpMap{d_in, d_out, std::move(sum), {}});
  report.valid =
      report.first_invalid_branch < 0 && report.sum_report.is_ts_channel;
  return report;
}

Instrument von_neumann_instrument(const std::vector<Vector>& basis) {
  if (basis.empty())
    throw Error(errc::incomplete_basis, "empty basis");
  const Index d = basis.front().size();
  if (static_cast<Index>(basis.size()) != d)
    throw Error(errc::incomplete_basis,
                "need exactly dim vectors, got " + std::to_string(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != d)
      throw Error(errc::dimension_mismatch, "basis vector length differs");
    for (size_t j = 0; j <= i; ++j) {
      double target = i == j ? 1.0 : 0.0;
      if (std::abs(std::abs(basis[i].dot(basis[j])) - target) > 1e-9)
        throw Error(errc::not_orthonormal, "basis is not orthonormal");
    }
  }
  std::vector<QuantumOperation> branches;
  branches.reserve(basis.size());
  for (const Vector& v : basis)
    branches.push_back(choi_from_kraus(make_kraus_form({projector(v)})));
  return make_instrument(std::move(branches));
}

Instrument luders_instrument(const std::vector<Matrix>& projectors) {
  if (projectors.empty())
    throw Error(errc::not_complete, "empty projector list");
  const Index d = projectors.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (size_t i = 0; i < projectors.size(); ++i) {
    const Matrix& p = projectors[i];
    if (p.rows() != d || p.cols() != d)
      throw Error(errc::dimension_mismatch, "projector shapes differ");
    if (hermiticity_defect(p) > 1e-9 || (p * p - p).norm() > 1e-9)
      throw Error(errc::not_projector,
                  "element " + std::to_string(i) + " is not a projector");
    for (size_t j = 0; j < i; ++j)
      if ((p * projectors[j]).norm() > 1e-9)
        throw Error(errc::not_orthogonal, "projectors are not orthogonal");
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).norm() > 1e-9)
    throw Error(errc::not_complete, "projectors do not sum to I");
  std::vector<QuantumOperation> branches;
  branches.reserve(projectors.size());
  for (const Matrix& p : projectors)
    branches.push_back(choi_from_kraus(make_kraus_form({p})));
  return make_instrument(std::move(branches));
}

std::vector<QuantumOperation> povm_to_ts_operations(
    const std::vector<Matrix>& effects) {
  if (effects.empty())
    throw Error(errc::not_normalized_povm, "empty effect list");
  const Index d = effects.front().rows();
  const Tolerances& tol = tolerances();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& p : effects) {
    if (p.rows() != d || p.cols() != d)
      throw Error(errc::dimension_mismatch, "effect shapes differ");
    if (hermiticity_defect(p) > tol.hermiticity_tol || !is_psd(p))
      throw Error(errc::not_psd_effect, "effect is not PSD");
    if (max_eigenvalue(p - Matrix::Identity(d, d)) > tol.psd_tol)
      throw Error(errc::not_psd_effect, "effect exceeds the identity");
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).norm() > tol.equality_tol)
    throw Error(errc::not_normalized_povm, "effects do not sum to I");
  std::vector<QuantumOperation> ops;
  ops.reserve(effects.size());
  for (const Matrix& p : effects)
    ops.emplace_back(d, 1, Matrix(p.transpose()), "povm-effect");
  return ops;
}

double max_prep_probability(const Vector& psi, Index d) {
  if (psi.size() != d)
    throw Error(errc::dimension_mismatch, "vector length != d");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw Error(errc::not_unit_vector, "expected a unit vector");
  // p |psi><psi| <= I/d saturates at p = 1/d.
  return 1.0 / static_cast<double>(d);
}

double max_prep_probability(const DensityMatrix& rho) {
  double tr = rho.trace();
  if (tr <= tolerances().support_cutoff)
    throw Error(errc::zero_trace, "zero preparation direction");
  double top = max_eigenvalue(rho.matrix() / tr);
  return 1.0 / (static_cast<double>(rho.dim()) * top);
}

namespace {

// Places the given orthonormal columns at the requested positions and
// fills the rest with the QR complement of their span.
Matrix complete_to_unitary(const Matrix& fixed_columns,
                           const std::vector<Index>& positions) {
  const Index n = fixed_columns.rows();
  const Index m = fixed_columns.cols();
  Eigen::HouseholderQR<Matrix> qr(fixed_columns);
  Matrix full_q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix u(n, n);
  std::vector<bool> taken(n, false);
  for (Index c = 0; c < m; ++c) {
    u.col(positions[static_cast<size_t>(c)]) = fixed_columns.col(c);
    taken[positions[static_cast<size_t>(c)]] = true;
  }
  Index next = m;
  for (Index col = 0; col < n; ++col) {
    if (taken[col]) continue;
    u.col(col) = full_q.col(next++);
  }
  return u;
}

}  // namespace

DilationRealization realize_via_dilation(const QuantumOperation& q) {
  const Index d_in = q.d_in(), d_out = q.d_out();
  const Tolerances& tol = tolerances();

  // Kraus set of q, extended by a complement to a channel.
  std::vector<Matrix> ops = kraus_from_choi(q.cp()).ops;
  const Index n_branch = static_cast<Index>(ops.size());
  Matrix defect = Matrix::Identity(d_in, d_in);
  for (const Matrix& k : ops) defect -= k.adjoint() * k;
  defect = 0.5 * (defect + defect.adjoint());
  if (defect.norm() > tol.equality_tol) {
    if (d_out >= d_in) {
      // Canonical isometric embedding times sqrt of the defect.
      Matrix embed = Matrix::Zero(d_out, d_in);
      embed.topLeftCorner(d_in, d_in) = Matrix::Identity(d_in, d_in);
      ops.push_back(embed * matrix_sqrt_psd(defect));
    } else {
      // No isometry into the smaller space; complete with rank-one
      // operators feeding the first output basis vector.
      HermitianEig eig = hermitian_eig(defect);
      for (Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values[i] < tol.support_cutoff) continue;
        Matrix r = Matrix::Zero(d_out, d_in);
        r.row(0) = std::sqrt(eig.values[i]) * eig.vectors.col(i).adjoint();
        ops.push_back(std::move(r));
      }
    }
  }
  const Index n_total = static_cast<Index>(ops.size());

  // Smallest ancilla pair with d_in * d_aux_in = d_out * d_aux_out and
  // d_aux_out a multiple of the number of Kraus labels.
  Index multiple = 1;
  while ((d_out * n_total * multiple) % d_in != 0) ++multiple;
  const Index d_aux_out = n_total * multiple;
  const Index d_aux_in = d_out * n_total * multiple / d_in;
  const Index n = d_in * d_aux_in;

  // Columns for inputs e_i (x) e_0: the stacked isometry sum_k A_k e_i (x) f_k.
  Matrix fixed(n, d_in);
  fixed.setZero();
  for (Index i = 0; i < d_in; ++i)
    for (Index k = 0; k < n_total; ++k)
      for (Index o = 0; o < d_out; ++o)
        fixed(o * d_aux_out + k, i) = ops[static_cast<size_t>(k)](o, i);
  std::vector<Index> positions(d_in);
  for (Index i = 0; i < d_in; ++i) positions[i] = i * d_aux_in;

  DilationRealization dil;
  dil.d_in = d_in;
  dil.d_out = d_out;
  dil.d_aux_in = d_aux_in;
  dil.d_aux_out = d_aux_out;
  dil.u = complete_to_unitary(fixed, positions);
  dil.psi0 = Vector::Zero(d_aux_in);
  dil.psi0[0] = 1.0;
  dil.p_effect = Matrix::Zero(d_aux_out, d_aux_out);
  for (Index k = 0; k < n_branch; ++k) dil.p_effect(k, k) = 1.0;

  double roundtrip = (realized_choi(dil) - q.choi()).norm();
  if (roundtrip > 1e-7)
    throw Error(errc::internal,
                "dilation round trip defect " + std::to_string(roundtrip));
  return dil;
}

Matrix realized_choi(const DilationRealization& dil) {
  const Index d_in = dil.d_in, d_out = dil.d_out;
  Matrix choi = Matrix::Zero(d_out * d_in, d_out * d_in);
  Matrix anc = dil.psi0 * dil.psi0.adjoint();
  for (Index i = 0; i < d_in; ++i)
    for (Index j = 0; j < d_in; ++j) {
      Matrix basis = Matrix::Zero(d_in, d_in);
      basis(i, j) = 1.0;
      Matrix evolved =
          dil.u * kron(basis, anc) * dil.u.adjoint();
      Matrix filtered =
          kron(Matrix::Identity(d_out, d_out), dil.p_effect) * evolved;
      Matrix image = partial_trace(filtered, d_out, dil.d_aux_out, Subsystem::a);
      for (Index a = 0; a < d_out; ++a)
        for (Index b = 0; b < d_out; ++b)
          choi(a * d_in + i, b * d_in + j) += image(a, b);
    }
  return choi;
}

TwirlResult unitary_twirl(const DensityMatrix& rho, int n_samples, Rng& rng) {
  if (n_samples < 1)
    throw Error(errc::dimension_mismatch, "n_samples must be >= 1");
  const Index d = rho.dim();
  Matrix avg = Matrix::Zero(d, d);
  for (int i = 0; i < n_samples; ++i) {
    Matrix u = haar_random_unitary(d, rng);
    avg += u * rho.matrix() * u.adjoint();
  }
  avg /= static_cast<double>(n_samples);
  double defect =
      (avg - Matrix::Identity(d, d) * (rho.trace() / static_cast<double>(d)))
          .norm();
  return TwirlResult{DensityMatrix(std::move(avg)), defect};
}

TwirlResult unitary_twirl_fixed_state(Index d, int n_samples,
                                      std::uint64_t seed) {
  Rng state_rng = Rng::stream(seed, 0);
  Rng twirl_rng = Rng::stream(seed, 1);
  DensityMatrix rho = random_density(d, state_rng);
  return unitary_twirl(rho, n_samples, twirl_rng);
}

}  // namespace qevo
