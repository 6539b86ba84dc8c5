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

#include "qevo/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qevo {

const char* symmetry_kind_name(SymmetryKind kind) {
  return kind == SymmetryKind::unitary ? "unitary" : "antiunitary";
}

const char* nogo_target_name(NogoTarget target) {
  switch (target) {
    case NogoTarget::dagger: return "dagger";
    case NogoTarget::transpose: return "transpose";
    case NogoTarget::identity: return "identity";
  }
  return "unknown";
}

StateSymmetry make_state_symmetry(SymmetryKind kind, Matrix u) {
  if (u.rows() != u.cols() || u.rows() < 1)
    throw Error(errc::non_square, "state symmetry needs a square unitary");
  double defect =
      (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
  if (defect > tolerances().unitary_tol)
    throw Error(errc::not_a_symmetry,
                "implementing matrix fails unitarity by " +
                    std::to_string(defect));
  return StateSymmetry{kind, std::move(u)};
}

SuperMap make_supermap(Index d_in, Index d_out, Index k_in, Index k_out,
                       Matrix m) {
  if (d_in < 1 || d_out < 1 || k_in < 1 || k_out < 1)
    throw Error(errc::dimension_mismatch, "supermap dims must be >= 1");
  if (m.rows() != k_out * k_in * k_out * k_in ||
      m.cols() != d_out * d_in * d_out * d_in)
    throw Error(errc::dimension_mismatch, "supermap matrix shape mismatch");
  return SuperMap{d_in, d_out, k_in, k_out, std::move(m)};
}

Matrix apply_supermap(const SuperMap& s, const Matrix& choi) {
  if (choi.rows() != s.d_out * s.d_in || choi.cols() != choi.rows())
    throw Error(errc::dimension_mismatch, "choi shape does not match supermap");
  return unvec(s.m * vec(choi), s.k_out * s.k_in, s.k_out * s.k_in);
}

Matrix conjugation_superop(const Matrix& u) {
  return kron(u.conjugate(), u);
}

Matrix transpose_superop(Index d) { return swap_operator(d, d); }

namespace {

// Choi matrix of the superoperator (on column-stacked operators).
Matrix superop_choi(const Matrix& superop, Index d) {
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Matrix basis = Matrix::Zero(d, d);
      basis(i, j) = 1.0;
      Matrix image = unvec(superop * vec(basis), d, d);
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
          choi(a * d + i, b * d + j) += image(a, b);
    }
  return choi;
}

// Tries to read the map as rho -> U rho U^dagger; on success fills u.
bool extract_conjugation(const Matrix& superop, Index d, Matrix& u) {
  Matrix choi = superop_choi(superop, d);
  if (hermiticity_defect(choi) > 1e-8 * std::max(1.0, choi.norm()))
    return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (choi + choi.adjoint()));
  RealVector values = solver.eigenvalues().reverse();
  const double top = values[0];
  const double gap = tolerances().rank1_gap;
  const double scale = static_cast<double>(d);
  if (std::abs(top - scale) > gap * scale) return false;
  if (values.size() > 1 && std::abs(values[1]) > gap * scale) return false;
  if (values.minCoeff() < -gap * scale) return false;
  Vector v = solver.eigenvectors().rowwise().reverse().col(0);
  Matrix candidate(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index m = 0; m < d; ++m) candidate(i, m) = std::sqrt(top) * v(i * d + m);
  if ((candidate.adjoint() * candidate - Matrix::Identity(d, d)).norm() > 1e-8)
    return false;
  u = phase_fixed(std::move(candidate));
  return true;
}

}  // namespace

StateSymmetry classify_state_symmetry(const Matrix& superop, Index d) {
  if (superop.rows() != d * d || superop.cols() != d * d)
    throw Error(errc::dimension_mismatch, "superoperator must be d^2 x d^2");
  Matrix u;
  if (extract_conjugation(superop, d, u))
    return StateSymmetry{SymmetryKind::unitary, std::move(u)};
  // Compose with the transpose and retest for the antiunitary branch.
  if (extract_conjugation(superop * transpose_superop(d), d, u))
    return StateSymmetry{SymmetryKind::antiunitary, std::move(u)};
  throw Error(errc::not_a_symmetry,
              "neither branch has a rank-one Choi matrix with a unitary "
              "unfolding");
}

Matrix apply_state_symmetry(const StateSymmetry& s, const Matrix& x) {
  if (x.rows() != s.u.cols() || x.cols() != s.u.cols())
    throw Error(errc::dimension_mismatch, "operator dim does not match");
  if (s.kind == SymmetryKind::unitary) return s.u * x * s.u.adjoint();
  return s.u * x.transpose() * s.u.adjoint();
}

DensityMatrix apply_state_symmetry(const StateSymmetry& s,
                                   const DensityMatrix& rho) {
  return DensityMatrix(apply_state_symmetry(s, rho.matrix()));
}

SuperMap build_operation_symmetry(const StateSymmetry& s1,
                                  const StateSymmetry& s2) {
  if (s1.kind != s2.kind)
    throw Error(errc::mixed_kinds,
                "mixed unitary/antiunitary pairs are not operation-space "
                "symmetries");
  const Index d_in = s1.u.rows();
  const Index d_out = s2.u.rows();
  const Index dim = d_out * d_in;
  Matrix a;
  Matrix m;
  if (s1.kind == SymmetryKind::unitary) {
    a = kron(s2.u, s1.u.transpose());
    m = kron(a.conjugate(), a);
  } else {
    a = kron(s2.u, s1.u.adjoint());
    m = kron(a.conjugate(), a) * transpose_superop(dim);
  }
  return SuperMap{d_in, d_out, d_in, d_out, std::move(m)};
}

std::pair<StateSymmetry, StateSymmetry> decompose_operation_symmetry(
    const SuperMap& s) {
  const Index d_in = s.d_in, d_out = s.d_out;
  const Index dim = d_out * d_in;
  if (s.k_in * s.k_out != d_in * d_out)
    throw Error(errc::dimension_mismatch,
                "total dimension must be preserved");
  if (s.m.rows() != dim * dim || s.m.cols() != dim * dim)
    throw Error(errc::dimension_mismatch, "supermap matrix shape mismatch");
  if (s.k_in != d_in || s.k_out != d_out)
    throw Error(errc::not_a_symmetry,
                "stage dimension-law: input and output spaces must match "
                "(k_in = d_in, k_out = d_out)");

  // Stage 1: the supermap itself must be a Wigner symmetry of the tensor
  // state space.
  StateSymmetry tensor_symmetry = [&] {
    try {
      return classify_state_symmetry(s.m, dim);
    } catch (const Error& e) {
      throw Error(errc::not_a_symmetry,
                  std::string("stage tensor-space classification: ") +
                      e.what());
    }
  }();

  StateSymmetry s1{SymmetryKind::unitary, Matrix()};
  StateSymmetry s2{SymmetryKind::unitary, Matrix()};

  if (tensor_symmetry.kind == SymmetryKind::antiunitary) {
    // Stage 2: peel off the double transpose and recurse on the unitary
    // branch.
    SuperMap reduced{d_in, d_out, d_in, d_out,
                     s.m * transpose_superop(dim)};
    auto [r1, r2] = decompose_operation_symmetry(reduced);
    if (r1.kind != SymmetryKind::unitary || r2.kind != SymmetryKind::unitary)
      throw Error(errc::not_a_symmetry,
                  "stage double-transpose reduction: reduced supermap is "
                  "not double unitary");
    s1 = StateSymmetry{SymmetryKind::antiunitary,
                       phase_fixed(Matrix(r1.u.conjugate()))};
    s2 = StateSymmetry{SymmetryKind::antiunitary, std::move(r2.u)};
  } else {
    // Stage 3: input-side symmetry from J(rho) = Tr_out[S(I (x) rho)]/d_out.
    Matrix j_superop(d_in * d_in, d_in * d_in);
    for (Index i = 0; i < d_in; ++i)
      for (Index j = 0; j < d_in; ++j) {
        Matrix basis = Matrix::Zero(d_in, d_in);
        basis(i, j) = 1.0;
        Matrix lifted = kron(Matrix::Identity(d_out, d_out), basis);
        Matrix image = unvec(s.m * vec(lifted), dim, dim);
        Matrix reduced = partial_trace(image, d_out, d_in, Subsystem::b) /
                         static_cast<double>(d_out);
        j_superop.col(j * d_in + i) = vec(reduced);
      }
    StateSymmetry j_symmetry = [&] {
      try {
        return classify_state_symmetry(j_superop, d_in);
      } catch (const Error& e) {
        throw Error(errc::not_a_symmetry,
                    std::string("stage input-side extraction: ") + e.what());
      }
    }();
    if (j_symmetry.kind != SymmetryKind::unitary)
      throw Error(errc::not_a_symmetry,
                  "stage input-side extraction: kind mismatch with the "
                  "tensor-space classification");

    // Stage 4: output-side symmetry from rho -> Tr_in[S(rho (x) P_psi)]
    // for a fixed pure psi (independent of psi for genuine symmetries).
    Matrix p_psi = Matrix::Zero(d_in, d_in);
    p_psi(0, 0) = 1.0;
    Matrix w_superop(d_out * d_out, d_out * d_out);
    for (Index i = 0; i < d_out; ++i)
      for (Index j = 0; j < d_out; ++j) {
        Matrix basis = Matrix::Zero(d_out, d_out);
        basis(i, j) = 1.0;
        Matrix lifted = kron(basis, p_psi);
        Matrix image = unvec(s.m * vec(lifted), dim, dim);
        Matrix reduced = partial_trace(image, d_out, d_in, Subsystem::a);
        w_superop.col(j * d_out + i) = vec(reduced);
      }
    StateSymmetry w_symmetry = [&] {
      try {
        return classify_state_symmetry(w_superop, d_out);
      } catch (const Error& e) {
        throw Error(errc::not_a_symmetry,
                    std::string("stage output-side extraction: ") + e.what());
      }
    }();
    if (w_symmetry.kind != SymmetryKind::unitary)
      throw Error(errc::not_a_symmetry,
                  "stage output-side extraction: kind mismatch with the "
                  "tensor-space classification");

    s1 = StateSymmetry{SymmetryKind::unitary,
                       phase_fixed(Matrix(j_symmetry.u.transpose()))};
    s2 = std::move(w_symmetry);
  }

  // Stage 5: the rebuilt product form must reproduce the input supermap.
  SuperMap rebuilt = build_operation_symmetry(s1, s2);
  double defect = (rebuilt.m - s.m).norm();
  if (defect > tolerances().symmetry_verify_tol * std::max(1.0, s.m.norm()))
    throw Error(errc::not_a_symmetry,
                "stage product-form verification: residual " +
                    std::to_string(defect));
  return {std::move(s1), std::move(s2)};
}

ChannelPreservationReport verify_channel_preservation(const SuperMap& s,
                                                      int n_samples,
                                                      std::uint64_t seed) {
  Rng rng(seed);
  ChannelPreservationReport report;
  report.n_samples = n_samples;
  for (int k = 0; k < n_samples; ++k) {
    Index rank = 1 + static_cast<Index>(rng.next_u64() % 4);
    QuantumOperation q = random_cptp(s.d_in, s.d_out, rank, rng);
    Matrix image = apply_supermap(s, q.choi());
    double hdefect = hermiticity_defect(image);
    if (hdefect > tolerances().hermiticity_tol) {
      report.worst_cp_defect = std::max(report.worst_cp_defect, hdefect);
      continue;
    }
    ClassifyReport c = classify(CpMap{s.k_in, s.k_out, std::move(image), {}});
    report.worst_tp_defect = std::max(report.worst_tp_defect, c.tp_defect);
    report.worst_cp_defect = std::max(report.worst_cp_defect, c.cp_defect);
    if (c.cp && c.trace_preserving) ++report.n_pass;
  }
  return report;
}

SuperMap weak_adjoint_supermap(Index d) {
  Matrix s = swap_operator(d, d);
  Matrix conj_part = kron(s.conjugate(), s);  // choi -> SWAP choi SWAP
  Matrix m = transpose_superop(d * d) * conj_part / static_cast<double>(d);
  return SuperMap{d, d, d, d, std::move(m)};
}

SuperMap identity_supermap(Index d_in, Index d_out) {
  const Index dim = d_out * d_in;
  return SuperMap{d_in, d_out, d_in, d_out,
                  Matrix::Identity(dim * dim, dim * dim)};
}

SuperMap double_transpose_supermap(Index d_in, Index d_out) {
  const Index dim = d_out * d_in;
  return SuperMap{d_in, d_out, d_in, d_out, transpose_superop(dim)};
}

// ---------------------------------------------------------------------------
// No-go residual search
// ---------------------------------------------------------------------------

namespace {

constexpr int kNogoIterations = 120;
constexpr int kNogoLineSearchSteps = 30;

Matrix nogo_source(const Matrix& u, SymmetryKind branch) {
  // Action of the candidate symmetry on a unitary channel: W U V for the
  // double-unitary branch, W U* V for the double-antiunitary branch.
  return branch == SymmetryKind::unitary ? u : u.conjugate();
}

Matrix nogo_goal(const Matrix& u, NogoTarget target) {
  switch (target) {
    case NogoTarget::dagger: return u.adjoint();
    case NogoTarget::transpose: return u.transpose();
    case NogoTarget::identity: return u;
  }
  return u;
}

// min over gamma of || A - e^{i gamma} B ||_F for unitary A, B.
double phase_min_residual(const Matrix& a, const Matrix& b) {
  double d2 = 2.0 * static_cast<double>(a.rows()) -
              2.0 * std::abs((a.adjoint() * b).trace());
  return std::sqrt(std::max(d2, 0.0));
}

struct NogoProblem {
  NogoTarget target;
  SymmetryKind branch;
  std::vector<Matrix> samples;  // Haar draws, fixed for the whole search

  double term(const Matrix& w, const Matrix& v, const Matrix& u) const {
    return phase_min_residual(w * nogo_source(u, branch) * v,
                              nogo_goal(u, target));
  }

  // Worst case over the identity, W-derived probes, and the Haar sample.
  double objective(const Matrix& w, const Matrix& v, Matrix* argmax) const {
    const Index d = w.rows();
    double worst = -1.0;
    auto consider = [&](const Matrix& u) {
      double r = term(w, v, u);
      if (r > worst) {
        worst = r;
        if (argmax) *argmax = u;
      }
    };
    consider(Matrix::Identity(d, d));
    consider(w);
    consider(w.adjoint());
    consider(w.transpose());
    consider(w.conjugate());
    for (const Matrix& u : samples) consider(u);
    return worst;
  }
};

Matrix polar_project(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Numerically estimated gradient of the current worst-case term with
// respect to the raw (unprojected) entries of w and v.
void numeric_gradient(const NogoProblem& problem, const Matrix& w,
                      const Matrix& v, const Matrix& u_star, Matrix& grad_w,
                      Matrix& grad_v) {
  const double h = 1e-6;
  const Index d = w.rows();
  grad_w = Matrix::Zero(d, d);
  grad_v = Matrix::Zero(d, d);
  Matrix wp = w, vp = v;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      for (int comp = 0; comp < 2; ++comp) {
        Complex delta = comp == 0 ? Complex(h, 0) : Complex(0, h);
        wp(i, j) = w(i, j) + delta;
        double fp = problem.term(wp, v, u_star);
        wp(i, j) = w(i, j) - delta;
        double fm = problem.term(wp, v, u_star);
        wp(i, j) = w(i, j);
        double deriv = (fp - fm) / (2.0 * h);
        grad_w(i, j) += comp == 0 ? Complex(deriv, 0) : Complex(0, deriv);

        vp(i, j) = v(i, j) + delta;
        fp = problem.term(w, vp, u_star);
        vp(i, j) = v(i, j) - delta;
        fm = problem.term(w, vp, u_star);
        vp(i, j) = v(i, j);
        deriv = (fp - fm) / (2.0 * h);
        grad_v(i, j) += comp == 0 ? Complex(deriv, 0) : Complex(0, deriv);
      }
    }
}

// Projected multi-start descent from one starting pair; returns the best
// objective reached and leaves (w, v) at the corresponding point.
double nogo_descend(const NogoProblem& problem, Matrix& w, Matrix& v) {
  Matrix u_star;
  double value = problem.objective(w, v, &u_star);
  double step = 0.25;
  for (int iter = 0; iter < kNogoIterations; ++iter) {
    Matrix grad_w, grad_v;
    numeric_gradient(problem, w, v, u_star, grad_w, grad_v);
    double gnorm = std::sqrt(grad_w.squaredNorm() + grad_v.squaredNorm());
    if (gnorm < 1e-12) break;
    bool improved = false;
    double t = step;
    for (int ls = 0; ls < kNogoLineSearchSteps; ++ls) {
      Matrix w_trial = polar_project(w - (t / gnorm) * grad_w);
      Matrix v_trial = polar_project(v - (t / gnorm) * grad_v);
      Matrix u_trial;
      double trial = problem.objective(w_trial, v_trial, &u_trial);
      if (trial < value - 1e-15) {
        w = std::move(w_trial);
        v = std::move(v_trial);
        value = trial;
        u_star = std::move(u_trial);
        step = std::min(t * 1.5, 1.0);
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;
  }
  return value;
}

}  // namespace

NogoResult nogo_residual(Index d, NogoTarget target, int unitary_sample_size,
                         int restarts, std::uint64_t seed) {
  if (d < 1)
    throw Error(errc::dimension_mismatch, "nogo_residual: d >= 1");
  if (unitary_sample_size < 1 || restarts < 1)
    throw Error(errc::dimension_mismatch,
                "sample size and restarts must be >= 1");

  Rng sample_rng = Rng::stream(seed, 0);
  std::vector<Matrix> samples;
  samples.reserve(static_cast<size_t>(unitary_sample_size));
  for (int i = 0; i < unitary_sample_size; ++i)
    samples.push_back(haar_random_unitary(d, sample_rng));

  NogoResult best;
  best.residual = std::numeric_limits<double>::infinity();
  const SymmetryKind branches[] = {SymmetryKind::unitary,
                                   SymmetryKind::antiunitary};
  for (int b = 0; b < 2; ++b) {
    NogoProblem problem{target, branches[b], samples};
    for (int r = 0; r < restarts; ++r) {
      // Stream indices independent of the restart budget, so a larger
      // budget extends a smaller one (best-so-far monotonicity).
      Rng start_rng = Rng::stream(
          seed, 1 + static_cast<std::uint64_t>(b + 1) * 100000 +
                    static_cast<std::uint64_t>(r));
      Matrix w, v;
      if (r == 0) {
        w = Matrix::Identity(d, d);
        v = Matrix::Identity(d, d);
      } else {
        w = haar_random_unitary(d, start_rng);
        v = haar_random_unitary(d, start_rng);
      }
      double value = nogo_descend(problem, w, v);
      if (value < best.residual) {
        best.residual = value;
        best.w = std::move(w);
        best.v = std::move(v);
        best.branch = branches[b];
      }
    }
  }
  return best;
}

}  // namespace qevo
