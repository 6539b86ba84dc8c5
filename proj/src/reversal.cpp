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

#include "qevo/reversal.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qevo/time_symmetric.hpp"

namespace qevo {

namespace {

void require_time_symmetric(const CpMap& q, const char* transform) {
  TSReport report = ts_classify(q);
  if (!report.is_ts_operation)
    throw Error(errc::not_time_symmetric,
                std::string(transform) +
                    " is only a symmetry of the time-symmetric set; defects "
                    "in/out " +
                    std::to_string(report.defect_in) + "/" +
                    std::to_string(report.defect_out));
}

void require_normalized(const DensityMatrix& rho, const char* what) {
  if (!rho.is_normalized())
    throw Error(errc::not_normalized,
                std::string(what) + " must be a normalized state");
}

// supp Q(omega_a) within supp omega_b, checked as the weight of Q(omega_a)
// outside the support projector of omega_b.
void require_support(const CpMap& q, const DensityMatrix& omega_a,
                     const DensityMatrix& omega_b) {
  Matrix image = act(q, omega_a.matrix());
  Matrix off =
      Matrix::Identity(q.d_out, q.d_out) -
      support_projector(omega_b.matrix(), tolerances().support_cutoff);
  double leak = (off * image * off).trace().real();
  if (leak > 1e-9)
    throw Error(errc::support_mismatch,
                "Q(omega_a) has weight " + std::to_string(leak) +
                    " outside supp(omega_b)");
}

CpMap sandwiched_reversal(const CpMap& q, const Matrix& left_root,
                          const Matrix& right_pinv_root, bool use_transpose,
                          std::string provenance) {
  std::vector<Matrix> ops;
  for (const Matrix& k : kraus_from_choi(q).ops) {
    Matrix reversed;
    if (use_transpose)
      reversed = k.transpose();
    else
      reversed = k.adjoint();
    ops.push_back(left_root * reversed * right_pinv_root);
  }
  return cp_map_from_kraus(q.d_out, q.d_in, ops, std::move(provenance));
}

}  // namespace

CpMap double_transpose(const CpMap& q) {
  if (hermiticity_defect(q.choi) > tolerances().hermiticity_tol)
    throw Error(errc::not_cp, "double_transpose expects a CP map");
  return CpMap{q.d_in, q.d_out, q.choi.transpose(), "double-transpose"};
}

QuantumOperation double_transpose(const QuantumOperation& q) {
  return QuantumOperation(double_transpose(q.cp()));
}

QuantumOperation theta_scaled(const QuantumOperation& q) {
  require_time_symmetric(q.cp(), "theta");
  CpMap adj = adjoint_map(q.cp());
  adj.choi *= static_cast<double>(q.d_out()) / static_cast<double>(q.d_in());
  adj.provenance = "theta";
  return QuantumOperation(std::move(adj));
}

QuantumOperation theta_prime_scaled(const QuantumOperation& q) {
  require_time_symmetric(q.cp(), "theta-prime");
  CpMap tr = transpose_map(q.cp());
  tr.choi *= static_cast<double>(q.d_out()) / static_cast<double>(q.d_in());
  tr.provenance = "theta-prime";
  return QuantumOperation(std::move(tr));
}

QuantumOperation weak_adjoint(const QuantumOperation& q) {
  CpMap adj = adjoint_map(q.cp());
  adj.choi /= static_cast<double>(q.d_in());
  adj.provenance = "weak-adjoint";
  return QuantumOperation(std::move(adj));
}

CpMap petz_reversal(const CpMap& q, const DensityMatrix& omega_a,
                    const DensityMatrix& omega_b) {
  if (omega_a.dim() != q.d_in || omega_b.dim() != q.d_out)
    throw Error(errc::dimension_mismatch,
                "reference state dims must match the map");
  require_normalized(omega_a, "omega_a");
  require_normalized(omega_b, "omega_b");
  require_support(q, omega_a, omega_b);
  return sandwiched_reversal(q, matrix_sqrt_psd(omega_a.matrix()),
                             support_pinv_sqrt(omega_b.matrix()), false,
                             "petz");
}

CpMap petz_reversal_transpose(const CpMap& q, const DensityMatrix& omega_a,
                              const DensityMatrix& omega_b) {
  if (omega_a.dim() != q.d_in || omega_b.dim() != q.d_out)
    throw Error(errc::dimension_mismatch,
                "reference state dims must match the map");
  require_normalized(omega_a, "omega_a");
  require_normalized(omega_b, "omega_b");
  require_support(q, omega_a, omega_b);
  Matrix left = matrix_sqrt_psd(omega_a.matrix()).conjugate();
  Matrix right = support_pinv_sqrt(omega_b.matrix()).conjugate();
  return sandwiched_reversal(q, left, right, true, "petz-transpose");
}

CpMap crooks_reversal(const QuantumOperation& channel,
                      const DensityMatrix& rho0) {
  if (!classify(channel.cp()).trace_preserving)
    throw Error(errc::not_channel, "crooks reversal expects a channel");
  require_normalized(rho0, "rho0");
  DensityMatrix image = apply(channel, rho0);
  CpMap out = petz_reversal(channel.cp(), rho0, image);
  out.provenance = "crooks";
  return out;
}

QuantumOperation crooks_reversal_operation(const QuantumOperation& q,
                                           const QuantumOperation& c0,
                                           const DensityMatrix& rho0) {
  if (q.d_in() != c0.d_in() || q.d_out() != c0.d_out())
    throw Error(errc::dimension_mismatch, "q and c0 dims differ");
  if (!classify(c0.cp()).trace_preserving)
    throw Error(errc::not_channel, "c0 must be a channel");
  require_normalized(rho0, "rho0");
  Matrix residual = c0.choi() - q.choi();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (residual + residual.adjoint()));
  if (solver.eigenvalues().minCoeff() < -tolerances().psd_tol)
    throw Error(errc::not_complementary,
                "c0 - q is not CP; c0 is not a completion of q");

  DensityMatrix image = apply(c0, rho0);
  require_support(q.cp(), rho0, image);
  CpMap out = sandwiched_reversal(q.cp(), matrix_sqrt_psd(rho0.matrix()),
                                  support_pinv_sqrt(image.matrix()), false,
                                  "crooks-operation");
  return QuantumOperation(std::move(out));
}

}  // namespace qevo
