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

#include "qevo/operations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qevo {

namespace {

// (K (x) I)|I>> for a d_out x d_in operator K; component (i, m) = K(i, m).
Vector kraus_vec(const Matrix& k) {
  const Index d_out = k.rows(), d_in = k.cols();
  Vector v(d_out * d_in);
  for (Index i = 0; i < d_out; ++i)
    for (Index m = 0; m < d_in; ++m) v(i * d_in + m) = k(i, m);
  return v;
}

Matrix trace_out(const CpMap& q) {
  return partial_trace(q.choi, q.d_out, q.d_in, Subsystem::b);
}

Matrix trace_in(const CpMap& q) {
  return partial_trace(q.choi, q.d_out, q.d_in, Subsystem::a);
}

double max_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  return solver.eigenvalues().maxCoeff();
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  return solver.eigenvalues().minCoeff();
}

void check_choi_shape(Index d_in, Index d_out, const Matrix& choi) {
  if (d_in < 1 || d_out < 1)
    throw Error(errc::dimension_mismatch, "map dimensions must be >= 1");
  if (choi.rows() != choi.cols() || choi.rows() != d_out * d_in)
    throw Error(errc::dimension_mismatch, "choi shape does not match dims");
}

}  // namespace

CpMap make_cp_map(Index d_in, Index d_out, Matrix choi,
                  std::string provenance) {
  check_choi_shape(d_in, d_out, choi);
  const Tolerances& tol = tolerances();
  double hdefect = hermiticity_defect(choi);
  if (hdefect > tol.hermiticity_tol)
    throw Error(errc::not_hermitian,
                "choi hermiticity defect " + std::to_string(hdefect));
  double min_eig = min_eigenvalue(choi);
  if (min_eig < -tol.psd_tol)
    throw Error(errc::not_cp,
                "choi minimum eigenvalue " + std::to_string(min_eig));
  return CpMap{d_in, d_out, std::move(choi), std::move(provenance)};
}

QuantumOperation::QuantumOperation(Index d_in, Index d_out, Matrix choi,
                                   std::string provenance)
    : QuantumOperation(
          make_cp_map(d_in, d_out, std::move(choi), std::move(provenance))) {}

QuantumOperation::QuantumOperation(CpMap map) : map_(std::move(map)) {
  check_choi_shape(map_.d_in, map_.d_out, map_.choi);
  Matrix excess =
      trace_out(map_) - Matrix::Identity(map_.d_in, map_.d_in);
  double defect = max_eigenvalue(excess);
  if (defect > tolerances().psd_tol)
    throw Error(errc::invalid_kraus,
                "trace-non-increasing violated by " + std::to_string(defect));
}

KrausForm make_kraus_form(std::vector<Matrix> ops) {
  if (ops.empty())
    throw Error(errc::invalid_kraus, "empty Kraus list");
  const Index d_out = ops.front().rows(), d_in = ops.front().cols();
  Matrix sum = Matrix::Zero(d_in, d_in);
  for (const Matrix& k : ops) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw Error(errc::dimension_mismatch, "inconsistent Kraus shapes");
    sum += k.adjoint() * k;
  }
  double defect = max_eigenvalue(sum - Matrix::Identity(d_in, d_in));
  if (defect > tolerances().psd_tol)
    throw Error(errc::invalid_kraus,
                "sum K^dagger K exceeds I by " + std::to_string(defect));
  return KrausForm{d_in, d_out, std::move(ops)};
}

Index Instrument::d_in() const {
  if (branches.empty()) throw Error(errc::empty_instrument, "no branches");
  return branches.front().d_in();
}

Index Instrument::d_out() const {
  if (branches.empty()) throw Error(errc::empty_instrument, "no branches");
  return branches.front().d_out();
}

Instrument make_instrument(std::vector<QuantumOperation> branches) {
  Instrument inst{std::move(branches)};
  InstrumentReport report = validate_instrument(inst);
  if (!report.valid)
    throw Error(errc::invalid_instrument,
                "branch sum is not a channel, defect " +
                    std::to_string(report.tp_defect));
  return inst;
}

QuantumOperation choi_from_kraus(const KrausForm& k) {
  CpMap map = cp_map_from_kraus(k.d_in, k.d_out, k.ops);
  return QuantumOperation(std::move(map));
}

CpMap cp_map_from_kraus(Index d_in, Index d_out, const std::vector<Matrix>& ops,
                        std::string provenance) {
  Matrix choi = Matrix::Zero(d_out * d_in, d_out * d_in);
  for (const Matrix& k : ops) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw Error(errc::dimension_mismatch, "inconsistent Kraus shapes");
    Vector v = kraus_vec(k);
    choi += v * v.adjoint();
  }
  return CpMap{d_in, d_out, std::move(choi), std::move(provenance)};
}

KrausForm kraus_from_choi(const CpMap& q) {
  check_choi_shape(q.d_in, q.d_out, q.choi);
  HermitianEig eig = hermitian_eig(q.choi);
  const Tolerances& tol = tolerances();
  if (eig.values.minCoeff() < -tol.psd_tol)
    throw Error(errc::not_cp, "choi minimum eigenvalue " +
                                  std::to_string(eig.values.minCoeff()));
  std::vector<Matrix> ops;
  for (Index n = 0; n < eig.values.size(); ++n) {
    if (eig.values[n] < tol.support_cutoff) continue;
    double w = std::sqrt(eig.values[n]);
    Matrix k(q.d_out, q.d_in);
    for (Index i = 0; i < q.d_out; ++i)
      for (Index m = 0; m < q.d_in; ++m)
        k(i, m) = w * eig.vectors(i * q.d_in + m, n);
    ops.push_back(std::move(k));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(q.d_out, q.d_in));
  return KrausForm{q.d_in, q.d_out, std::move(ops)};
}

Matrix act(const CpMap& q, const Matrix& x) {
  if (x.rows() != q.d_in || x.cols() != q.d_in)
    throw Error(errc::dimension_mismatch, "apply: operator dim != d_in");
  Matrix lifted = q.choi * kron(Matrix::Identity(q.d_out, q.d_out),
                                x.transpose());
  return partial_trace(lifted, q.d_out, q.d_in, Subsystem::a);
}

DensityMatrix apply(const QuantumOperation& q, const DensityMatrix& rho) {
  return DensityMatrix(act(q.cp(), rho.matrix()));
}

CpMap compose(const CpMap& second, const CpMap& first) {
  if (first.d_out != second.d_in)
    throw Error(errc::dimension_mismatch, "compose: inner dims differ");
  KrausForm ka = kraus_from_choi(second);
  KrausForm kb = kraus_from_choi(first);
  std::vector<Matrix> ops;
  ops.reserve(ka.ops.size() * kb.ops.size());
  for (const Matrix& a : ka.ops)
    for (const Matrix& b : kb.ops) ops.push_back(a * b);
  return cp_map_from_kraus(first.d_in, second.d_out, ops);
}

QuantumOperation compose(const QuantumOperation& second,
                         const QuantumOperation& first) {
  return QuantumOperation(compose(second.cp(), first.cp()));
}

CpMap tensor(const CpMap& a, const CpMap& b) {
  KrausForm ka = kraus_from_choi(a);
  KrausForm kb = kraus_from_choi(b);
  std::vector<Matrix> ops;
  ops.reserve(ka.ops.size() * kb.ops.size());
  for (const Matrix& x : ka.ops)
    for (const Matrix& y : kb.ops) ops.push_back(kron(x, y));
  return cp_map_from_kraus(a.d_in * b.d_in, a.d_out * b.d_out, ops);
}

QuantumOperation tensor(const QuantumOperation& a, const QuantumOperation& b) {
  return QuantumOperation(tensor(a.cp(), b.cp()));
}

CpMap transpose_map(const CpMap& q) {
  check_choi_shape(q.d_in, q.d_out, q.choi);
  if (min_eigenvalue(q.choi) < -tolerances().psd_tol)
    throw Error(errc::not_cp, "transpose_map expects a CP map");
  Matrix s = swap_operator(q.d_out, q.d_in);
  return CpMap{q.d_out, q.d_in, s * q.choi * s.adjoint(), "transpose"};
}

CpMap adjoint_map(const CpMap& q) {
  CpMap t = transpose_map(q);
  t.choi = t.choi.transpose().eval();
  t.provenance = "adjoint";
  return t;
}

ClassifyReport classify(const CpMap& q) {
  check_choi_shape(q.d_in, q.d_out, q.choi);
  const Tolerances& tol = tolerances();
  ClassifyReport r;

  HermitianEig eig = hermitian_eig(q.choi);
  r.cp_defect = std::max(0.0, -eig.values.minCoeff());
  r.cp = r.cp_defect <= tol.psd_tol;

  Matrix tin = trace_out(q);
  Matrix eye_in = Matrix::Identity(q.d_in, q.d_in);
  r.tni_defect = std::max(0.0, max_eigenvalue(tin - eye_in));
  r.trace_nonincreasing = r.tni_defect <= tol.psd_tol;
  r.tp_defect = (tin - eye_in).norm();
  r.trace_preserving = r.tp_defect <= tol.equality_tol;

  Matrix tout = trace_in(q);
  Matrix eye_out = Matrix::Identity(q.d_out, q.d_out);
  r.unital_defect =
      (tout / static_cast<double>(q.d_in) - eye_out / static_cast<double>(q.d_out))
          .norm();
  r.bistochastic = r.trace_preserving && q.d_in == q.d_out &&
                   (tout - eye_out).norm() <= tol.equality_tol;

  double ts_out_excess = std::max(
      0.0, max_eigenvalue(tout / static_cast<double>(q.d_in) -
                          eye_out / static_cast<double>(q.d_out)));
  r.time_symmetric =
      r.tni_defect <= tol.psd_tol && ts_out_excess <= tol.psd_tol && r.cp;

  r.unitary = false;
  if (q.d_in == q.d_out && r.cp && r.trace_preserving) {
    double top = eig.values[0];
    double second = eig.values.size() > 1 ? eig.values[1] : 0.0;
    double scale = static_cast<double>(q.d_in);
    r.unitary = std::abs(top - scale) <= tol.rank1_gap * scale &&
                std::abs(second) <= tol.rank1_gap * scale;
  }
  return r;
}

InstrumentReport validate_instrument(const Instrument& inst) {
  if (inst.branches.empty())
    throw Error(errc::empty_instrument, "instrument has no branches");
  const Index d_in = inst.d_in(), d_out = inst.d_out();
  Matrix sum = Matrix::Zero(d_out * d_in, d_out * d_in);
  for (const QuantumOperation& q : inst.branches) {
    if (q.d_in() != d_in || q.d_out() != d_out)
      throw Error(errc::dimension_mismatch, "branch dimensions differ");
    sum += q.choi();
  }
  CpMap total{d_in, d_out, std::move(sum), {}};
  InstrumentReport report;
  report.cp_defect = std::max(0.0, -min_eigenvalue(total.choi));
  report.tp_defect =
      (trace_out(total) - Matrix::Identity(d_in, d_in)).norm();
  report.valid = report.cp_defect <= tolerances().psd_tol &&
                 report.tp_defect <= tolerances().equality_tol;
  return report;
}

std::pair<int, DensityMatrix> sample_instrument(const Instrument& inst,
                                                const DensityMatrix& rho,
                                                Rng& rng) {
  InstrumentReport report = validate_instrument(inst);
  if (!report.valid)
    throw Error(errc::invalid_instrument,
                "branch sum is not a channel, defect " +
                    std::to_string(report.tp_defect));
  if (!rho.is_normalized())
    throw Error(errc::not_normalized, "sampling expects a normalized state");
  if (rho.dim() != inst.d_in())
    throw Error(errc::dimension_mismatch, "state dim != instrument d_in");

  const int n = static_cast<int>(inst.branches.size());
  std::vector<double> probs(n);
  int last_nonzero = 0;
  for (int i = 0; i < n; ++i) {
    double p = act(inst.branches[i].cp(), rho.matrix()).trace().real();
    probs[i] = std::max(p, 0.0);
    if (probs[i] > tolerances().support_cutoff) last_nonzero = i;
  }
  // Inverse CDF; the final nonzero branch absorbs floating-point slack.
  double u = rng.uniform();
  double cumulative = 0.0;
  int outcome = last_nonzero;
  for (int i = 0; i < n; ++i) {
    cumulative += probs[i];
    if (u < cumulative) {
      outcome = i;
      break;
    }
  }
  if (probs[outcome] <= tolerances().support_cutoff) outcome = last_nonzero;
  DensityMatrix post = condition(apply(inst.branches[outcome], rho));
  return {outcome, post};
}

QuantumOperation random_cptp(Index d_in, Index d_out, Index kraus_rank,
                             Rng& rng) {
  if (kraus_rank < 1)
    throw Error(errc::dimension_mismatch, "kraus_rank must be >= 1");
  Index rank = kraus_rank;
  while (d_out * rank < d_in) ++rank;  // isometry needs d_out*rank >= d_in
  Matrix u = haar_random_unitary(d_out * rank, rng);
  Matrix v = u.leftCols(d_in);
  std::vector<Matrix> ops;
  ops.reserve(rank);
  for (Index k = 0; k < rank; ++k) {
    Matrix kr(d_out, d_in);
    for (Index i = 0; i < d_out; ++i) kr.row(i) = v.row(i * rank + k);
    ops.push_back(std::move(kr));
  }
  return choi_from_kraus(make_kraus_form(std::move(ops)));
}

QuantumOperation random_cptp(Index d_in, Index d_out, Index kraus_rank,
                             std::uint64_t seed) {
  Rng rng(seed);
  return random_cptp(d_in, d_out, kraus_rank, rng);
}

QuantumOperation identity_operation(Index d) {
  Vector v = vec_identity(d);
  return QuantumOperation(d, d, v * v.adjoint(), "identity");
}

QuantumOperation unitary_channel(const Matrix& u) {
  if (u.rows() != u.cols())
    throw Error(errc::non_square, "unitary_channel expects a square matrix");
  if ((u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm() >
      tolerances().unitary_tol)
    throw Error(errc::invalid_kraus, "matrix is not unitary");
  return choi_from_kraus(make_kraus_form({u}));
}

QuantumOperation random_bistochastic(Index d, Index n_terms, Rng& rng) {
  if (n_terms < 1)
    throw Error(errc::dimension_mismatch, "n_terms must be >= 1");
  std::vector<double> weights(n_terms);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  std::vector<Matrix> ops;
  ops.reserve(n_terms);
  for (Index i = 0; i < n_terms; ++i)
    ops.push_back(std::sqrt(weights[i] / total) * haar_random_unitary(d, rng));
  return choi_from_kraus(make_kraus_form(std::move(ops)));
}

}  // namespace qevo
