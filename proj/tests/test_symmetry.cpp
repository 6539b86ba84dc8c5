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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qevo/symmetry.hpp"
#include "test_helpers.hpp"

using namespace qevo;
using namespace qevo::test;

namespace {

// Element-wise oracle for the supermap of Q -> S2 o Q o S1: pushes every
// Choi basis element through the sequential composition of the state
// symmetries, independently of the Kronecker-product construction.
Matrix sequential_supermap_oracle(const StateSymmetry& s1,
                                  const StateSymmetry& s2, Index d_in,
                                  Index d_out, const Matrix& choi) {
  Matrix out = Matrix::Zero(d_out * d_in, d_out * d_in);
  // Choi of S(Q): sum_ij S2(Q(S1(E_ij))) (x) E_ij. Q's action on an
  // operator x is recovered from the input choi by the contraction
  // Tr_in[choi (I (x) x^T)].
  CpMap q{d_in, d_out, choi, {}};
  for (Index i = 0; i < d_in; ++i)
    for (Index j = 0; j < d_in; ++j) {
      Matrix basis = Matrix::Zero(d_in, d_in);
      basis(i, j) = 1.0;
      Matrix image =
          apply_state_symmetry(s2, Matrix(act(q, apply_state_symmetry(s1, basis))));
      for (Index a = 0; a < d_out; ++a)
        for (Index b = 0; b < d_out; ++b)
          out(a * d_in + i, b * d_in + j) += image(a, b);
    }
  return out;
}

StateSymmetry random_symmetry(SymmetryKind kind, Index d, Rng& rng) {
  return make_state_symmetry(kind, haar_random_unitary(d, rng));
}

// Supermap of the forbidden mixed combination S2 unitary, S1 antiunitary:
// the unitary build applied after a partial transpose on the input factor.
SuperMap mixed_kind_fabrication(const Matrix& v, const Matrix& w) {
  const Index d_in = v.rows(), d_out = w.rows();
  const Index dim = d_out * d_in;
  Matrix pt = Matrix::Zero(dim * dim, dim * dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      Index io = i / d_in, ii = i % d_in;
      Index jo = j / d_in, ji = j % d_in;
      // partial transpose on the input factor: ((io,ii),(jo,ji)) ->
      // ((io,ji),(jo,ii))
      Index r = io * d_in + ji, c = jo * d_in + ii;
      // vec-space matrix element: maps entry (i,j) of the input choi to
      // entry (r,c) of the output; columns indexed by j*dim+i.
      pt(c * dim + r, j * dim + i) = 1.0;
    }
  SuperMap unitary_part =
      build_operation_symmetry(make_state_symmetry(SymmetryKind::unitary, v),
                               make_state_symmetry(SymmetryKind::unitary, w));
  return SuperMap{d_in, d_out, d_in, d_out, unitary_part.m * pt};
}

}  // namespace

TEST_CASE("classify_state_symmetry fixed cases") {
  StateSymmetry id = classify_state_symmetry(Matrix::Identity(4, 4), 2);
  CHECK(id.kind == SymmetryKind::unitary);
  CHECK(phase_aligned_distance(id.u, Matrix::Identity(2, 2)) <= 1e-9);

  StateSymmetry tr = classify_state_symmetry(transpose_superop(2), 2);
  CHECK(tr.kind == SymmetryKind::antiunitary);
  CHECK(phase_aligned_distance(tr.u, Matrix::Identity(2, 2)) <= 1e-9);
}

TEST_CASE("classify_state_symmetry round-trips random conjugations") {
  Rng rng(301);
  for (Index d : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix u = haar_random_unitary(d, rng);
      StateSymmetry found = classify_state_symmetry(conjugation_superop(u), d);
      CHECK(found.kind == SymmetryKind::unitary);
      CHECK(phase_aligned_distance(found.u, u) <= 1e-8);

      StateSymmetry anti = classify_state_symmetry(
          Matrix(conjugation_superop(u) * transpose_superop(d)), d);
      CHECK(anti.kind == SymmetryKind::antiunitary);
      CHECK(phase_aligned_distance(anti.u, u) <= 1e-8);
    }
  }
}

TEST_CASE("classify_state_symmetry rejects non-symmetries") {
  // Complete depolarization: rho -> Tr[rho] I/2.
  Matrix depol = Matrix::Zero(4, 4);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      depol.col(j * 2 + i) = 0.5 * static_cast<double>(i == j) *
                             vec(Matrix(Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(classify_state_symmetry(depol, 2), Error);

  // Scaled identity fails the top-eigenvalue normalization.
  CHECK_THROWS_AS(classify_state_symmetry(Matrix(0.5 * Matrix::Identity(4, 4)), 2),
                  Error);
}

TEST_CASE("apply_state_symmetry") {
  Rng rng(307);
  DensityMatrix rho = random_density(2, rng);
  StateSymmetry id = make_state_symmetry(SymmetryKind::unitary,
                                         Matrix::Identity(2, 2));
  CHECK((apply_state_symmetry(id, rho).matrix() - rho.matrix()).norm() <=
        1e-12);

  // Transposition maps the +i eigenstate of Y to the -i eigenstate.
  Vector plus_i(2), minus_i(2);
  plus_i << 1.0 / std::sqrt(2.0), Complex(0, 1) / std::sqrt(2.0);
  minus_i << 1.0 / std::sqrt(2.0), Complex(0, -1) / std::sqrt(2.0);
  StateSymmetry conj_sym = make_state_symmetry(SymmetryKind::antiunitary,
                                               Matrix::Identity(2, 2));
  CHECK((apply_state_symmetry(conj_sym, DensityMatrix(projector(plus_i)))
             .matrix() -
         projector(minus_i))
            .norm() <= 1e-12);
}

TEST_CASE("state symmetries preserve fidelity") {
  Rng rng(311);
  for (int trial = 0; trial < 15; ++trial) {
    Index d = 2 + (trial % 2);
    SymmetryKind kind =
        trial % 2 == 0 ? SymmetryKind::unitary : SymmetryKind::antiunitary;
    StateSymmetry s = random_symmetry(kind, d, rng);
    DensityMatrix rho = random_density(d, rng);
    DensityMatrix sigma = random_density(d, rng);
    double before = fidelity(rho, sigma);
    double after =
        fidelity(apply_state_symmetry(s, rho), apply_state_symmetry(s, sigma));
    CHECK(std::abs(after - before) <= 1e-9);
  }
}

TEST_CASE("build_operation_symmetry fixed cases") {
  StateSymmetry uid = make_state_symmetry(SymmetryKind::unitary,
                                          Matrix::Identity(2, 2));
  SuperMap identity_built = build_operation_symmetry(uid, uid);
  CHECK((identity_built.m - Matrix::Identity(16, 16)).norm() <= 1e-12);

  StateSymmetry aid = make_state_symmetry(SymmetryKind::antiunitary,
                                          Matrix::Identity(2, 2));
  SuperMap tau = build_operation_symmetry(aid, aid);
  Rng rng(313);
  QuantumOperation q = random_cptp(2, 2, 2, rng);
  CHECK((apply_supermap(tau, q.choi()) - q.choi().transpose()).norm() <=
        1e-12);

  CHECK_THROWS_AS(build_operation_symmetry(uid, aid), Error);
  try {
    build_operation_symmetry(aid, uid);
    FAIL("expected MixedKinds");
  } catch (const Error& e) {
    CHECK(e.code() == errc::mixed_kinds);
  }
}

TEST_CASE("built supermaps agree with the sequential-composition oracle") {
  Rng rng(317);
  for (int trial = 0; trial < 12; ++trial) {
    Index d_in = 2 + (trial % 2), d_out = 2 + ((trial + 1) % 2);
    SymmetryKind kind =
        trial % 2 == 0 ? SymmetryKind::unitary : SymmetryKind::antiunitary;
    StateSymmetry s1 = random_symmetry(kind, d_in, rng);
    StateSymmetry s2 = random_symmetry(kind, d_out, rng);
    SuperMap s = build_operation_symmetry(s1, s2);
    QuantumOperation q = random_cptp(d_in, d_out, 1 + trial % 3, rng);
    Matrix via_supermap = apply_supermap(s, q.choi());
    Matrix via_sequential =
        sequential_supermap_oracle(s1, s2, d_in, d_out, q.choi());
    CHECK((via_supermap - via_sequential).norm() <= 1e-9);
  }
}

TEST_CASE("decompose recovers identity and double transpose") {
  auto [i1, i2] = decompose_operation_symmetry(identity_supermap(2, 2));
  CHECK(i1.kind == SymmetryKind::unitary);
  CHECK(i2.kind == SymmetryKind::unitary);
  CHECK(phase_aligned_distance(i1.u, Matrix::Identity(2, 2)) <= 1e-9);
  CHECK(phase_aligned_distance(i2.u, Matrix::Identity(2, 2)) <= 1e-9);

  auto [t1, t2] = decompose_operation_symmetry(double_transpose_supermap(2, 2));
  CHECK(t1.kind == SymmetryKind::antiunitary);
  CHECK(t2.kind == SymmetryKind::antiunitary);
  CHECK(phase_aligned_distance(t1.u, Matrix::Identity(2, 2)) <= 1e-9);
  CHECK(phase_aligned_distance(t2.u, Matrix::Identity(2, 2)) <= 1e-9);
}

TEST_CASE("build-decompose round trip over Haar pairs") {
  Rng rng(331);
  const Index dims[][2] = {{2, 2}, {2, 3}, {3, 2}};
  for (auto [d_in, d_out] : dims) {
    for (int trial = 0; trial < 6; ++trial) {
      SymmetryKind kind =
          trial % 2 == 0 ? SymmetryKind::unitary : SymmetryKind::antiunitary;
      StateSymmetry s1 = random_symmetry(kind, d_in, rng);
      StateSymmetry s2 = random_symmetry(kind, d_out, rng);
      SuperMap s = build_operation_symmetry(s1, s2);
      auto [r1, r2] = decompose_operation_symmetry(s);
      CHECK(r1.kind == kind);
      CHECK(r2.kind == kind);
      CHECK(phase_aligned_distance(r1.u, s1.u) <= 1e-7);
      CHECK(phase_aligned_distance(r2.u, s2.u) <= 1e-7);
    }
  }
}

TEST_CASE("decompose rejects mixed-kind fabrications") {
  Rng rng(337);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix v = haar_random_unitary(2, rng);
    Matrix w = haar_random_unitary(2, rng);
    SuperMap fabrication = mixed_kind_fabrication(v, w);
    // The fabricated map sends the identity channel to a non-CP image
    // (partial transposition is not completely positive).
    Matrix image = apply_supermap(fabrication, identity_operation(2).choi());
    CHECK_FALSE(is_psd(image));
    try {
      decompose_operation_symmetry(fabrication);
      FAIL("expected NotASymmetry");
    } catch (const Error& e) {
      CHECK(e.code() == errc::not_a_symmetry);
    }
  }
}

TEST_CASE("decompose rejects perturbed symmetries") {
  Rng rng(341);
  SuperMap noisy = identity_supermap(2, 2);
  Matrix bump = ginibre(16, 16, rng);
  noisy.m += 1e-3 * (bump + bump.adjoint());
  try {
    decompose_operation_symmetry(noisy);
    FAIL("expected NotASymmetry");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_a_symmetry);
  }
}

TEST_CASE("decompose enforces the dimension law") {
  // Equal total dimension but swapped factors is not a symmetry of a
  // fixed operation space.
  SuperMap swapped{2, 3, 3, 2, Matrix::Identity(36, 36)};
  try {
    decompose_operation_symmetry(swapped);
    FAIL("expected NotASymmetry");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_a_symmetry);
  }

  SuperMap wrong_total{2, 2, 2, 3, Matrix::Identity(36, 36)};
  CHECK_THROWS_AS(decompose_operation_symmetry(wrong_total), Error);
}

TEST_CASE("verify_channel_preservation") {
  ChannelPreservationReport id_report =
      verify_channel_preservation(identity_supermap(2, 2), 25, 7);
  CHECK(id_report.n_pass == id_report.n_samples);

  Rng rng(347);
  SuperMap uu = build_operation_symmetry(
      random_symmetry(SymmetryKind::unitary, 2, rng),
      random_symmetry(SymmetryKind::unitary, 2, rng));
  ChannelPreservationReport uu_report = verify_channel_preservation(uu, 25, 8);
  CHECK(uu_report.n_pass == uu_report.n_samples);
  CHECK(uu_report.worst_tp_defect <= 1e-9);

  // The weak reversal scales traces by 1/d: every channel fails.
  ChannelPreservationReport weak_report =
      verify_channel_preservation(weak_adjoint_supermap(2), 25, 9);
  CHECK(weak_report.n_pass == 0);
}

TEST_CASE("nogo_residual control and scalar cases") {
  NogoResult scalar = nogo_residual(1, NogoTarget::dagger, 5, 2, 1);
  CHECK(scalar.residual <= 1e-9);

  NogoResult control = nogo_residual(2, NogoTarget::identity, 40, 3, 1);
  CHECK(control.residual <= 1e-6);
}

TEST_CASE("nogo_residual monotone in restarts and positive for reversals") {
  NogoResult two = nogo_residual(2, NogoTarget::dagger, 30, 2, 5);
  NogoResult five = nogo_residual(2, NogoTarget::dagger, 30, 5, 5);
  CHECK(five.residual <= two.residual + 1e-12);
  CHECK(two.residual > 0.1);

  NogoResult transpose = nogo_residual(2, NogoTarget::transpose, 30, 3, 5);
  CHECK(transpose.residual > 0.1);

  // Determinism of the full search.
  NogoResult replay = nogo_residual(2, NogoTarget::dagger, 30, 2, 5);
  CHECK(replay.residual == two.residual);
  CHECK((replay.w - two.w).norm() == 0.0);
}
