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

namespace qevo {

/// Central numeric-tolerance ledger. Every toleranced predicate in the
/// library reads from one shared record so thresholds cannot drift apart
/// between modules.
struct Tolerances {
  /// Minimum eigenvalue slack for positive-semidefinite checks.
  double psd_tol = 1e-9;
  /// Frobenius bound on ||m - m^dagger|| for Hermitian checks.
  double hermiticity_tol = 1e-9;
  /// Eigenvalues below this are treated as outside the support.
  double support_cutoff = 1e-10;
  /// Frobenius bound for equality of matrices / unit traces.
  double equality_tol = 1e-8;
  /// u^dagger u = I test for extracted and supplied unitaries.
  double unitary_tol = 1e-9;
  /// Rank-1 test for Choi spectra: second eigenvalue <= gap * first.
  double rank1_gap = 1e-7;
  /// Round-trip bound for symmetry decomposition verification.
  double symmetry_verify_tol = 1e-7;

  /// Scales every threshold by a common factor (CLI env override).
  void scale(double factor) {
    psd_tol *= factor;
    hermiticity_tol *= factor;
    support_cutoff *= factor;
    equality_tol *= factor;
    unitary_tol *= factor;
    rank1_gap *= factor;
    symmetry_verify_tol *= factor;
  }
};

/// Process-wide tolerance record. Intended to be adjusted once at startup
/// (if at all) and treated as immutable afterwards.
Tolerances& tolerances();

}  // namespace qevo
