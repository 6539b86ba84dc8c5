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

#include "qevo/linalg.hpp"

namespace qevo {

/// Density matrix, possibly subnormalized: Hermitian, PSD, 0 <= trace <= 1.
/// Subnormalized states are first-class; the trace is the probability that
/// the state was prepared by the underlying stochastic process.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }
  double trace() const { return mat_.trace().real(); }
  bool is_normalized() const;

 private:
  Matrix mat_;
};

/// Uhlmann fidelity F(rho, sigma) = (sum of singular values of
/// sqrt(rho) sqrt(sigma))^2, in [0, 1]. Both states must be normalized.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// |<psi|phi>| for unit vectors; invariant under global phases.
double ray_product(const Vector& psi, const Vector& phi);

DensityMatrix maximally_mixed(Index d);

/// The non-linear renormalization rho -> rho / Tr[rho]. Throws ZeroTrace
/// when conditioning on a zero-probability event.
DensityMatrix condition(const DensityMatrix& rho);

/// Purification of a normalized state, sum_i sqrt(lambda_i) v_i (x) e_i in
/// C^{d^2} (system factor first). Eigenvector phases are fixed so the first
/// non-negligible component is real positive.
Vector purify(const DensityMatrix& rho);

/// Normalized full-rank (a.s.) state G G^dagger / Tr from a Ginibre G.
DensityMatrix random_density(Index d, Rng& rng);
DensityMatrix random_density(Index d, std::uint64_t seed);

/// Rank-one projector |psi><psi|.
Matrix projector(const Vector& psi);

}  // namespace qevo
