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

#include "qevo/operations.hpp"

namespace qevo {

/// The double transpose tau_out o Q o tau_in: complex conjugation of the
/// Kraus operators, i.e. plain transposition of the Choi matrix. The seed
/// of all double-antiunitary symmetries; preserves all classify flags.
QuantumOperation double_transpose(const QuantumOperation& q);
CpMap double_transpose(const CpMap& q);

/// The scaled reversal Q -> (d_out/d_in) Q^dagger, a bijection of the
/// time-symmetric set onto itself with input and output swapped. Outside
/// that set the image leaves the operation space, which is exactly the
/// no-go obstruction; such inputs are rejected as NotTimeSymmetric.
QuantumOperation theta_scaled(const QuantumOperation& q);

/// The transpose variant Q -> (d_out/d_in) Q^T, same domain and range.
QuantumOperation theta_prime_scaled(const QuantumOperation& q);

/// The weak (injective, non-surjective) reversal Q -> Q^dagger / d_in,
/// defined on every quantum operation. Applying it twice returns
/// Q / (d_in * d_out).
QuantumOperation weak_adjoint(const QuantumOperation& q);

/// Petz-style reversal with reference states omega_a (input side) and
/// omega_b (output side):
///   rho -> omega_a^{1/2} Q^dagger(omega_b^{-1/2} rho omega_b^{-1/2}) omega_a^{1/2}.
/// Inverses are taken on the support of omega_b; components of the input
/// outside that support are annihilated. Requires supp Q(omega_a) within
/// supp omega_b.
CpMap petz_reversal(const CpMap& q, const DensityMatrix& omega_a,
                    const DensityMatrix& omega_b);

/// Transpose variant with conjugated reference states:
///   rho -> omega_a*^{1/2} Q^T(omega_b*^{-1/2} rho omega_b*^{-1/2}) omega_a*^{1/2}.
CpMap petz_reversal_transpose(const CpMap& q, const DensityMatrix& omega_a,
                              const DensityMatrix& omega_b);

/// Crooks' state-dependent reversal of a channel,
///   rho -> rho0^{1/2} C^dagger([C(rho0)]^{-1/2} rho [C(rho0)]^{-1/2}) rho0^{1/2};
/// recovers C(rho0) -> rho0 and is trace-preserving on supp C(rho0).
CpMap crooks_reversal(const QuantumOperation& channel,
                      const DensityMatrix& rho0);

/// Crooks reversal of a single quantum operation q relative to an explicit
/// completion c0 = q + q' (a channel); the arbitrariness of the complement
/// is surfaced as the c0 argument. The result is a valid quantum
/// operation, dominated by crooks_reversal(c0, rho0) in CP order.
QuantumOperation crooks_reversal_operation(const QuantumOperation& q,
                                           const QuantumOperation& c0,
                                           const DensityMatrix& rho0);

}  // namespace qevo
