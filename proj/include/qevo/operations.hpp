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
#include <string>
#include <utility>
#include <vector>

#include "qevo/states.hpp"

namespace qevo {

// ---------------------------------------------------------------------------
// Map records
// ---------------------------------------------------------------------------

/// A completely positive map between operator spaces, stored as its Choi
/// matrix on H_out (x) H_in,
///
///   choi = sum_{ij} M(|i><j|) (x) |i><j| .
///
/// Unlike QuantumOperation, a CpMap carries no trace-non-increasing
/// guarantee: the adjoint and transpose of a quantum operation generally
/// leave the operation set, and classify() reports that as data instead of
/// a constructor rejecting it. Build through make_cp_map (which checks
/// hermiticity and positivity); aggregate construction is unchecked.
struct CpMap {
  Index d_in = 0;
  Index d_out = 0;
  Matrix choi;
  /// Audit trail for reversal outputs (which transform, which references).
  std::string provenance;
};

CpMap make_cp_map(Index d_in, Index d_out, Matrix choi,
                  std::string provenance = {});

/// A quantum operation: CP and trace-non-increasing, Tr_out(choi) <= I_in.
class QuantumOperation {
 public:
  QuantumOperation(Index d_in, Index d_out, Matrix choi,
                   std::string provenance = {});
  explicit QuantumOperation(CpMap map);

  Index d_in() const { return map_.d_in; }
  Index d_out() const { return map_.d_out; }
  const Matrix& choi() const { return map_.choi; }
  const std::string& provenance() const { return map_.provenance; }

  const CpMap& cp() const { return map_; }
  operator const CpMap&() const { return map_; }

 private:
  CpMap map_;
};

/// Kraus operators {K_i}, all d_out x d_in, with sum K_i^dagger K_i <= I.
struct KrausForm {
  Index d_in = 0;
  Index d_out = 0;
  std::vector<Matrix> ops;
};

/// Validates shapes and the trace-non-increasing sum.
KrausForm make_kraus_form(std::vector<Matrix> ops);

/// A finite collection of quantum operations summing to a channel. The
/// aggregate is unchecked so that defective candidates can be inspected;
/// make_instrument and validate_instrument enforce the channel condition.
struct Instrument {
  std::vector<QuantumOperation> branches;

  Index d_in() const;
  Index d_out() const;
};

Instrument make_instrument(std::vector<QuantumOperation> branches);

struct InstrumentReport {
  bool valid = false;
  double tp_defect = 0.0;  // ||Tr_out(sum choi) - I||_F
  double cp_defect = 0.0;  // negative-eigenvalue excess of the sum
};

// ---------------------------------------------------------------------------
// Conversions and actions
// ---------------------------------------------------------------------------

QuantumOperation choi_from_kraus(const KrausForm& k);

/// Choi matrix of an arbitrary Kraus list (no trace-non-increasing check);
/// used for CP-map records such as reversal outputs.
CpMap cp_map_from_kraus(Index d_in, Index d_out, const std::vector<Matrix>& ops,
                        std::string provenance = {});

/// Kraus operators from the Choi eigendecomposition; eigenvalues below the
/// support cutoff are dropped. A null map yields one zero operator.
KrausForm kraus_from_choi(const CpMap& q);

/// Action on an arbitrary operator, M(x) = Tr_in[choi (I_out (x) x^T)];
/// the raw workhorse behind apply().
Matrix act(const CpMap& q, const Matrix& x);

/// Action on a state; the result may be subnormalized.
DensityMatrix apply(const QuantumOperation& q, const DensityMatrix& rho);

/// second after first.
CpMap compose(const CpMap& second, const CpMap& first);
QuantumOperation compose(const QuantumOperation& second,
                         const QuantumOperation& first);

/// Tensor product map, Kraus ops all pairwise Kronecker products.
CpMap tensor(const CpMap& a, const CpMap& b);
QuantumOperation tensor(const QuantumOperation& a, const QuantumOperation& b);

/// Q^dagger, the map with daggered Kraus operators. In the Choi picture
/// choi(Q^dagger) = [SWAP choi(Q) SWAP^dagger]^T. Generally not
/// trace-non-increasing, hence a CpMap.
CpMap adjoint_map(const CpMap& q);

/// Q^T, the map with transposed Kraus operators (fixed computational
/// basis); choi(Q^T) = SWAP choi(Q) SWAP^dagger.
CpMap transpose_map(const CpMap& q);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct ClassifyReport {
  bool cp = false;
  bool trace_nonincreasing = false;
  bool trace_preserving = false;
  bool bistochastic = false;
  bool unitary = false;
  bool time_symmetric = false;
  double cp_defect = 0.0;   // negative-eigenvalue excess of choi
  double tni_defect = 0.0;  // max eigenvalue excess of Tr_out(choi) - I
  double tp_defect = 0.0;   // ||Tr_out(choi) - I||_F
  double unital_defect = 0.0;  // ||Tr_in(choi) - (d_in/d_out) I||_F scaled form
};

/// Evaluates every predicate independently with the module tolerances;
/// reports, never rejects (the choi only needs to be Hermitian).
ClassifyReport classify(const CpMap& q);

/// Channel condition for the instrument as a whole.
InstrumentReport validate_instrument(const Instrument& inst);

/// Samples an outcome with the Born probabilities Tr[Q_n(rho)] and returns
/// the conditioned post-measurement state.
std::pair<int, DensityMatrix> sample_instrument(const Instrument& inst,
                                                const DensityMatrix& rho,
                                                Rng& rng);

/// Stinespring sample: a Haar isometry from C^{d_in} into
/// C^{d_out} (x) C^{kraus_rank}, traced over the environment.
QuantumOperation random_cptp(Index d_in, Index d_out, Index kraus_rank,
                             Rng& rng);
QuantumOperation random_cptp(Index d_in, Index d_out, Index kraus_rank,
                             std::uint64_t seed);

QuantumOperation identity_operation(Index d);
QuantumOperation unitary_channel(const Matrix& u);

/// Random mixture of Haar unitary channels (bistochastic by construction).
QuantumOperation random_bistochastic(Index d, Index n_terms, Rng& rng);

}  // namespace qevo
