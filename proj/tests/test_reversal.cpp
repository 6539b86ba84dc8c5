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

#include "qevo/reversal.hpp"
#include "qevo/time_symmetric.hpp"
#include "test_helpers.hpp"

using namespace qevo;
using namespace qevo::test;

namespace {

QuantumOperation c0_channel() {
  return choi_from_kraus(make_kraus_form({0.5 * Matrix::Identity(2, 2),
                                          0.5 * pauli_x(), 0.5 * pauli_y(),
                                          0.5 * pauli_z()}));
}

QuantumOperation discard_prepare_zero() {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(0, 1) = 1.0;
  return choi_from_kraus(make_kraus_form({k0, k1}));
}

DensityMatrix random_full_rank(Index d, Rng& rng) {
  Matrix m = random_psd(d, rng) + 0.2 * Matrix::Identity(d, d);
  return DensityMatrix(m / m.trace().real());
}

}  // namespace

TEST_CASE("double_transpose basics") {
  // Real-Kraus channel is a fixed point.
  QuantumOperation bitflip = choi_from_kraus(make_kraus_form(
      {std::sqrt(0.7) * Matrix::Identity(2, 2), std::sqrt(0.3) * pauli_x()}));
  CHECK((double_transpose(bitflip).choi() - bitflip.choi()).norm() <= 1e-12);

  Rng rng(201);
  Matrix u = haar_random_unitary(3, rng);
  QuantumOperation uc = unitary_channel(u);
  CHECK((double_transpose(uc).choi() -
         unitary_channel(Matrix(u.conjugate())).choi())
            .norm() <= 1e-9);
  // tau(U^T) = U^dagger.
  CpMap ut = transpose_map(uc.cp());
  CHECK((double_transpose(ut).choi -
         unitary_channel(Matrix(u.adjoint())).choi())
            .norm() <= 1e-9);
}

TEST_CASE("double_transpose is the Choi transpose and preserves all flags") {
  Rng rng(203);
  for (int trial = 0; trial < 20; ++trial) {
    Index d_in = 2 + (trial % 2), d_out = 2 + ((trial + 1) % 2);
    QuantumOperation q =
        random_operation(d_in, d_out, 1 + trial % 3, 0.5 + 0.5 * rng.uniform(),
                         rng);
    QuantumOperation t = double_transpose(q);
    CHECK((t.choi() - q.choi().transpose()).norm() <= 1e-12);
    CHECK((double_transpose(t).choi() - q.choi()).norm() <= 1e-12);

    ClassifyReport before = classify(q.cp());
    ClassifyReport after = classify(t.cp());
    CHECK(before.cp == after.cp);
    CHECK(before.trace_nonincreasing == after.trace_nonincreasing);
    CHECK(before.trace_preserving == after.trace_preserving);
    CHECK(before.bistochastic == after.bistochastic);
    CHECK(before.time_symmetric == after.time_symmetric);
  }
}

TEST_CASE("theta_scaled fixed points and domain") {
  QuantumOperation id = identity_operation(2);
  CHECK((theta_scaled(id).choi() - id.choi()).norm() <= 1e-12);
  CHECK((theta_prime_scaled(id).choi() - id.choi()).norm() <= 1e-12);

  QuantumOperation c0 = c0_channel();
  CHECK((theta_scaled(c0).choi() - c0.choi()).norm() <= 1e-9);
  CHECK((theta_prime_scaled(c0).choi() - c0.choi()).norm() <= 1e-9);

  try {
    theta_scaled(discard_prepare_zero());
    FAIL("expected NotTimeSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_time_symmetric);
  }
}

TEST_CASE("theta of a POVM-effect operation is the matching preparation") {
  // Effect P = |+i><+i| = (I + Y)/2; the operation rho -> Tr[P rho] has a
  // one-dimensional output, and the scaled adjoint prepares P / d. The
  // transpose variant prepares P^T / d.
  Matrix p = 0.5 * (Matrix::Identity(2, 2) + pauli_y());
  auto ops = povm_to_ts_operations({p, Matrix(Matrix::Identity(2, 2) - p)});
  const QuantumOperation& effect_op = ops[0];
  CHECK((effect_op.choi() - p.transpose()).norm() <= 1e-12);

  QuantumOperation prep = theta_scaled(effect_op);
  CHECK(prep.d_in() == 1);
  CHECK(prep.d_out() == 2);
  CHECK((prep.choi() - 0.5 * p).norm() <= 1e-12);

  QuantumOperation prep_t = theta_prime_scaled(effect_op);
  CHECK((prep_t.choi() - 0.5 * p.transpose()).norm() <= 1e-12);

  // Both directions stay in the time-symmetric set, and theta undoes
  // itself through the involution.
  CHECK(ts_classify(prep.cp()).is_ts_operation);
  CHECK(ts_classify(prep_t.cp()).is_ts_operation);
  CHECK((theta_scaled(prep).choi() - effect_op.choi()).norm() <= 1e-12);
}

TEST_CASE("theta and theta-prime are involutions on sampled TS operations") {
  Rng rng(211);
  for (int trial = 0; trial < 15; ++trial) {
    Index d = 2 + (trial % 3);
    QuantumOperation c = random_bistochastic(d, 1 + trial % 4, rng);
    QuantumOperation sub(d, d, (0.3 + 0.7 * rng.uniform()) * c.choi());
    CHECK(ts_classify(sub.cp()).is_ts_operation);

    QuantumOperation once = theta_scaled(sub);
    CHECK(ts_classify(once.cp()).is_ts_operation);
    CHECK((theta_scaled(once).choi() - sub.choi()).norm() <= 1e-9);

    QuantumOperation once_t = theta_prime_scaled(sub);
    CHECK(ts_classify(once_t.cp()).is_ts_operation);
    CHECK((theta_prime_scaled(once_t).choi() - sub.choi()).norm() <= 1e-9);
  }
}

TEST_CASE("theta reduces to dagger and transpose on unitary channels") {
  Rng rng(213);
  for (int trial = 0; trial < 10; ++trial) {
    Index d = 2 + (trial % 2);
    Matrix u = haar_random_unitary(d, rng);
    QuantumOperation uc = unitary_channel(u);
    CHECK((theta_scaled(uc).choi() -
           unitary_channel(Matrix(u.adjoint())).choi())
              .norm() <= 1e-9);
    CHECK((theta_prime_scaled(uc).choi() -
           unitary_channel(Matrix(u.transpose())).choi())
              .norm() <= 1e-9);
    CHECK(classify(theta_scaled(uc).cp()).bistochastic);
    CHECK(classify(theta_prime_scaled(uc).cp()).bistochastic);
  }
}

TEST_CASE("weak_adjoint") {
  QuantumOperation id = identity_operation(2);
  CHECK((weak_adjoint(id).choi() - 0.5 * id.choi()).norm() <= 1e-12);

  Rng rng(217);
  for (int trial = 0; trial < 15; ++trial) {
    QuantumOperation q =
        random_operation(2, 2, 1 + trial % 3, 0.4 + 0.6 * rng.uniform(), rng);
    QuantumOperation twice = weak_adjoint(weak_adjoint(q));
    CHECK((twice.choi() - 0.25 * q.choi()).norm() <= 1e-9);
    CHECK(classify(weak_adjoint(q).cp()).trace_nonincreasing);
  }

  // Defined on every operation, including the non-TS ones.
  CHECK_NOTHROW(weak_adjoint(discard_prepare_zero()));
}

TEST_CASE("petz reversal with maximally mixed references is the scaled adjoint") {
  Rng rng(219);
  for (int trial = 0; trial < 10; ++trial) {
    Index d = 2 + (trial % 3);
    QuantumOperation c = random_bistochastic(d, 2, rng);
    CpMap petz = petz_reversal(c.cp(), maximally_mixed(d), maximally_mixed(d));
    CHECK((petz.choi - adjoint_map(c.cp()).choi).norm() <= 1e-12);
  }
}

TEST_CASE("petz reversal of a unitary channel is the inverse channel") {
  Rng rng(223);
  for (int trial = 0; trial < 10; ++trial) {
    Index d = 2 + (trial % 2);
    Matrix u = haar_random_unitary(d, rng);
    QuantumOperation uc = unitary_channel(u);
    DensityMatrix omega_a = random_full_rank(d, rng);
    DensityMatrix omega_b = apply(uc, omega_a);
    CpMap rec = petz_reversal(uc.cp(), omega_a, omega_b);
    CHECK((rec.choi - unitary_channel(Matrix(u.adjoint())).choi()).norm() <=
          1e-7);
  }
}

TEST_CASE("petz reversal recovers the reference pair") {
  Rng rng(227);
  for (int trial = 0; trial < 15; ++trial) {
    Index d = 2 + (trial % 2);
    QuantumOperation c = random_cptp(d, d, 1 + trial % 3, rng);
    DensityMatrix omega_a = random_full_rank(d, rng);
    Matrix image = act(c.cp(), omega_a.matrix());
    DensityMatrix omega_b{image};
    CpMap rec = petz_reversal(c.cp(), omega_a, omega_b);
    CHECK(classify(rec).tp_defect <= 1e-7);
    CHECK((act(rec, omega_b.matrix()) - omega_a.matrix()).norm() <= 1e-7);
  }
}

TEST_CASE("petz support precondition") {
  QuantumOperation discard = discard_prepare_zero();
  DensityMatrix omega_b(projector(Vector(Vector::Unit(2, 1))));
  try {
    petz_reversal(discard.cp(), maximally_mixed(2), omega_b);
    FAIL("expected SupportMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == errc::support_mismatch);
  }
}

TEST_CASE("petz transpose variant") {
  Rng rng(229);
  SUBCASE("maximally mixed references give the scaled transpose") {
    for (int trial = 0; trial < 8; ++trial) {
      Index d = 2 + (trial % 2);
      QuantumOperation c = random_bistochastic(d, 2, rng);
      CpMap pt =
          petz_reversal_transpose(c.cp(), maximally_mixed(d), maximally_mixed(d));
      CHECK((pt.choi - transpose_map(c.cp()).choi).norm() <= 1e-12);
    }
  }
  SUBCASE("real references relate the two petz variants by double transpose") {
    for (int trial = 0; trial < 8; ++trial) {
      Index d = 2 + (trial % 2);
      QuantumOperation c = random_cptp(d, d, 2, rng);
      // Real diagonal full-rank input reference state.
      Matrix wa = Matrix::Zero(d, d);
      double za = 0.0;
      for (Index i = 0; i < d; ++i) {
        wa(i, i) = 0.2 + rng.uniform();
        za += wa(i, i).real();
      }
      DensityMatrix omega_a{Matrix(wa / za)};
      // Maximally mixed output reference (also real), so the identity
      // Theta'(Q) = tau(Theta(Q)) holds exactly.
      DensityMatrix omega_b = maximally_mixed(d);
      CpMap pt = petz_reversal_transpose(c.cp(), omega_a, omega_b);
      CpMap p = petz_reversal(c.cp(), omega_a, omega_b);
      CHECK((pt.choi - double_transpose(p).choi).norm() <= 1e-9);
      CHECK(is_psd(pt.choi));
    }
  }
}

TEST_CASE("crooks reversal") {
  Rng rng(233);
  SUBCASE("identity channel") {
    DensityMatrix rho0 = random_full_rank(2, rng);
    CpMap rec = crooks_reversal(identity_operation(2), rho0);
    CHECK((rec.choi - identity_operation(2).choi()).norm() <= 1e-7);
  }
  SUBCASE("fixed-point channels reduce to the recovery map at I/d") {
    QuantumOperation c = random_bistochastic(3, 3, rng);
    CpMap rec = crooks_reversal(c, maximally_mixed(3));
    CHECK((rec.choi - adjoint_map(c.cp()).choi).norm() <= 1e-9);
  }
  SUBCASE("recovery of the reference state") {
    for (int trial = 0; trial < 12; ++trial) {
      Index d = 2 + (trial % 2);
      QuantumOperation c = random_cptp(d, d, 1 + trial % 3, rng);
      DensityMatrix rho0 = random_full_rank(d, rng);
      CpMap rec = crooks_reversal(c, rho0);
      Matrix image = act(c.cp(), rho0.matrix());
      CHECK((act(rec, image) - rho0.matrix()).norm() <= 1e-7);
      CHECK(classify(rec).tp_defect <= 1e-7);
    }
  }
  SUBCASE("rejects non-channels") {
    QuantumOperation sub(2, 2, 0.5 * identity_operation(2).choi());
    try {
      crooks_reversal(sub, maximally_mixed(2));
      FAIL("expected NotChannel");
    } catch (const Error& e) {
      CHECK(e.code() == errc::not_channel);
    }
  }
}

TEST_CASE("crooks reversal of a single operation") {
  Rng rng(239);
  SUBCASE("trivial complement reduces to the channel case") {
    QuantumOperation c = random_cptp(2, 2, 2, rng);
    DensityMatrix rho0 = random_full_rank(2, rng);
    QuantumOperation rec = crooks_reversal_operation(c, c, rho0);
    CHECK((rec.choi() - crooks_reversal(c, rho0).choi).norm() <= 1e-9);
  }
  SUBCASE("half a unitary channel reverses to half the inverse") {
    Matrix u = haar_random_unitary(2, rng);
    QuantumOperation uc = unitary_channel(u);
    QuantumOperation half(2, 2, 0.5 * uc.choi());
    QuantumOperation rec =
        crooks_reversal_operation(half, uc, maximally_mixed(2));
    CHECK((rec.choi() -
           0.5 * unitary_channel(Matrix(u.adjoint())).choi())
              .norm() <= 1e-9);
  }
  SUBCASE("random splits stay inside the operation set and CP order") {
    for (int trial = 0; trial < 10; ++trial) {
      Index d = 2 + (trial % 2);
      QuantumOperation c0 = random_cptp(d, d, 2 + trial % 2, rng);
      auto kraus = kraus_from_choi(c0.cp());
      REQUIRE(kraus.ops.size() >= 2);
      QuantumOperation q(
          d, d, cp_map_from_kraus(d, d, {kraus.ops[0]}).choi);
      DensityMatrix rho0 = random_full_rank(d, rng);
      QuantumOperation rec = crooks_reversal_operation(q, c0, rho0);
      Matrix dominance =
          crooks_reversal(c0, rho0).choi - rec.choi();
      CHECK(is_psd(dominance, 1e-8));
    }
  }
  SUBCASE("rejects non-complementary pairs") {
    QuantumOperation c0 = random_bistochastic(2, 2, rng);
    Matrix u = haar_random_unitary(2, rng);
    try {
      crooks_reversal_operation(unitary_channel(u), c0, maximally_mixed(2));
      FAIL("expected NotComplementary");
    } catch (const Error& e) {
      CHECK(e.code() == errc::not_complementary);
    }
  }
}

TEST_CASE("the obvious reversal candidates fail outside the TS set") {
  QuantumOperation discard = discard_prepare_zero();
  ClassifyReport r = classify(adjoint_map(discard.cp()));
  CHECK_FALSE(r.trace_nonincreasing);
  CHECK(r.tni_defect == doctest::Approx(1.0));
}
