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
#include <utility>

#include "qevo/operations.hpp"

namespace qevo {

enum class SymmetryKind { unitary, antiunitary };

const char* symmetry_kind_name(SymmetryKind kind);

/// A Wigner symmetry of a state space: rho -> U rho U^dagger (unitary) or
/// rho -> U rho^T U^dagger (antiunitary), with U a unitary matrix.
struct StateSymmetry {
  SymmetryKind kind = SymmetryKind::unitary;
  Matrix u;
};

/// Validates unitarity of u.
StateSymmetry make_state_symmetry(SymmetryKind kind, Matrix u);

/// A linear transformation of Choi space: a candidate symmetry of the
/// operation space Op(d_in, d_out) -> Op(k_in, k_out). The matrix acts on
/// column-stacked Choi matrices, vec(choi') = m * vec(choi).
struct SuperMap {
  Index d_in = 0, d_out = 0;  // input operation space
  Index k_in = 0, k_out = 0;  // output operation space
  Matrix m;
};

SuperMap make_supermap(Index d_in, Index d_out, Index k_in, Index k_out,
                       Matrix m);

/// choi -> unvec(m * vec(choi)).
Matrix apply_supermap(const SuperMap& s, const Matrix& choi);

/// Superoperator matrix (acting on column-stacked operators) of
/// rho -> u rho u^dagger.
Matrix conjugation_superop(const Matrix& u);

/// Superoperator matrix of rho -> rho^T (the vec-space commutation matrix).
Matrix transpose_superop(Index d);

/// Wigner classification of a superoperator on one state space: extracts
/// the implementing unitary from the rank-one Choi matrix of the map, or
/// of the map composed with the transpose. Throws NotASymmetry when
/// neither branch is rank-one with a unitary unfolding.
StateSymmetry classify_state_symmetry(const Matrix& superop, Index d);

DensityMatrix apply_state_symmetry(const StateSymmetry& s,
                                   const DensityMatrix& rho);
Matrix apply_state_symmetry(const StateSymmetry& s, const Matrix& x);

/// The operation-space symmetry Q -> S2 o Q o S1 in Choi representation.
/// Requires s1.kind == s2.kind; mixed pairs break complete positivity
/// and are rejected (MixedKinds).
SuperMap build_operation_symmetry(const StateSymmetry& s1,
                                  const StateSymmetry& s2);

/// Constructive converse: recovers (s1, s2) with s = S2 o _ o S1 from a
/// candidate supermap, verifying each stage:
///   1. the supermap is a Wigner symmetry of the tensor state space,
///   2. an antiunitary candidate is reduced to the unitary branch by
///      composing with the double transpose,
///   3. the input-side symmetry is read off Tr_out[S(I (x) rho)] / d_out,
///   4. the output-side symmetry is read off Tr_in[S(rho (x) P_psi)],
///   5. the rebuilt product form must reproduce the input supermap.
/// Throws NotASymmetry naming the failed stage.
std::pair<StateSymmetry, StateSymmetry> decompose_operation_symmetry(
    const SuperMap& s);

struct ChannelPreservationReport {
  int n_samples = 0;
  int n_pass = 0;
  double worst_tp_defect = 0.0;
  double worst_cp_defect = 0.0;
};

/// Samples random channels, pushes them through the supermap, and checks
/// that channels land on channels (report-only).
ChannelPreservationReport verify_channel_preservation(const SuperMap& s,
                                                      int n_samples,
                                                      std::uint64_t seed);

enum class NogoTarget { dagger, transpose, identity };

const char* nogo_target_name(NogoTarget target);

struct NogoResult {
  double residual = 0.0;
  Matrix w, v;
  SymmetryKind branch = SymmetryKind::unitary;
};

/// Desk-scale witness that time reversal does not extend to the full
/// operation space: searches over unitary pairs (W, V) and both Wigner
/// branches for a symmetry whose action sends every unitary channel U to
/// the target (U^dagger, U^T, or U itself as a feasibility control),
/// reporting the smallest worst-case Frobenius residual found (global
/// phases eliminated in closed form). A residual floor that stays
/// positive across restarts witnesses the obstruction; the identity
/// control must reach ~0.
NogoResult nogo_residual(Index d, NogoTarget target, int unitary_sample_size,
                         int restarts, std::uint64_t seed);

/// Supermap of Q -> Q^dagger / d (the weak reversal) on Op(d, d).
SuperMap weak_adjoint_supermap(Index d);

SuperMap identity_supermap(Index d_in, Index d_out);

/// Supermap of the double transpose (Choi transposition).
SuperMap double_transpose_supermap(Index d_in, Index d_out);

}  // namespace qevo
