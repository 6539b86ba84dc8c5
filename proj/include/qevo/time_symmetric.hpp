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

#include <cstdint>
#include <vector>

#include "qevo/operations.hpp"

namespace qevo {

/// Outcome of the two time-symmetry conditions
///   Q^dagger(I_out) <= I_in   and   Q(I_in / d_in) <= I_out / d_out.
/// A time-symmetric channel satisfies both with equality.
struct TSReport {
  bool is_ts_operation = false;
  bool is_ts_channel = false;
  double defect_in = 0.0;   // max eigenvalue excess of Q^dagger(I) - I
  double defect_out = 0.0;  // max eigenvalue excess of Q(I/d_in) - I/d_out
};

/// Evaluates both conditions. The first is checked as Tr_out(choi) <= I,
/// which is the same operator up to a transpose.
TSReport ts_classify(const CpMap& q);

struct TsInstrumentReport {
  bool valid = false;
  std::vector<TSReport> branch_reports;
  TSReport sum_report;
  /// Index of the first branch failing the operation condition, or -1.
  int first_invalid_branch = -1;
};

/// True iff every branch is a time-symmetric operation and the branch sum
/// is a time-symmetric channel.
TsInstrumentReport validate_ts_instrument(const Instrument& inst);

/// Projective measurement in an orthonormal basis, branch n given by the
/// single Kraus operator |n><n|.
Instrument von_neumann_instrument(const std::vector<Vector>& basis);

/// Measurement of a complete set of orthogonal projectors, branch n given
/// by rho -> P_n rho P_n.
Instrument luders_instrument(const std::vector<Matrix>& projectors);

/// Demolition measurement: each POVM effect becomes the scalar-output
/// operation rho -> Tr[P_n rho], with choi = P_n^T on a one-dimensional
/// output space.
std::vector<QuantumOperation> povm_to_ts_operations(
    const std::vector<Matrix>& effects);

/// Largest p with p * |psi><psi| <= I/d: exactly 1/d for a unit vector.
double max_prep_probability(const Vector& psi, Index d);

/// Variant for an arbitrary preparation direction: 1 / (d * lambda_max) of
/// the normalized state.
double max_prep_probability(const DensityMatrix& rho);

/// Realization of a quantum operation as unitary dilation plus ancilla
/// measurement: Q(rho) = Tr_aux'[(I (x) P) U (rho (x) psi0) U^dagger].
struct DilationRealization {
  Index d_in = 0;
  Index d_out = 0;
  Index d_aux_in = 0;   // ancilla prepared in psi0
  Index d_aux_out = 0;  // ancilla carrying the measurement operator
  Matrix u;             // (d_in * d_aux_in) square unitary
  Vector psi0;          // ancilla input state
  Matrix p_effect;      // projector on the output ancilla
};

DilationRealization realize_via_dilation(const QuantumOperation& q);

/// Choi matrix of the map realized by a dilation, for round-trip checks.
Matrix realized_choi(const DilationRealization& dilation);

struct TwirlResult {
  DensityMatrix state;
  double defect = 0.0;  // ||twirled - I/d||_F
};

/// Monte-Carlo twirl: average of U rho U^dagger over Haar samples.
TwirlResult unitary_twirl(const DensityMatrix& rho, int n_samples, Rng& rng);

/// Twirl of a seed-derived random state.
TwirlResult unitary_twirl_fixed_state(Index d, int n_samples,
                                      std::uint64_t seed);

}  // namespace qevo
