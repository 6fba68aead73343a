// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/optimizers.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nqsvmc {

namespace {

struct CgOutcome {
  Eigen::VectorXcd x;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
};

// Conjugate gradients on the Hermitian positive (semi-)definite shifted
// system; the operator is only touched through SrSystem::apply.
CgOutcome conjugate_gradient(const SrSystem& sys, double a_diag,
                             const Eigen::VectorXcd& rhs, double tol, int max_iter) {
  CgOutcome out;
  const double rhs_norm = rhs.norm();
  out.x = Eigen::VectorXcd::Zero(rhs.size());
  if (rhs_norm == 0.0) {
    out.converged = true;
    return out;
  }
  Eigen::VectorXcd r = rhs;
  Eigen::VectorXcd p = r;
  double rs = r.squaredNorm();
  const double threshold = tol * rhs_norm;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXcd ap = sys.apply(p, a_diag);
    const double p_ap = std::real(p.dot(ap));
    if (p_ap <= 0.0) break;  // lost positive definiteness to rounding
    const double alpha = rs / p_ap;
    out.x += alpha * p;
    r -= alpha * ap;
    const double rs_next = r.squaredNorm();
    out.iterations = it + 1;
    if (std::sqrt(rs_next) <= threshold) {
      out.converged = true;
      rs = rs_next;
      break;
    }
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  out.residual = std::sqrt(rs) / rhs_norm;
  if (out.converged) out.residual = (sys.apply(out.x, a_diag) - rhs).norm() / rhs_norm;
  return out;
}

}  // namespace

UpdateResult sr_step(const SrSystem& sys, const SrConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  UpdateResult res;
  CgOutcome cg = conjugate_gradient(sys, cfg.a_diag, sys.force, cfg.cg_tol, cfg.cg_max_iter);
  res.diagnostics.cg_iterations = cg.iterations;
  res.diagnostics.cg_residual = cg.residual;
  if (cg.converged) {
    res.delta = -cfg.eta * cg.x;
  } else {
    UpdateResult dense = sr_solve_dense(sys, cfg);
    res.delta = std::move(dense.delta);
    res.diagnostics.dense_fallback = true;
  }
  res.t_u_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

UpdateResult sr_solve_dense(const SrSystem& sys, const SrConfig& cfg) {
  cfg.validate();
  if (sys.n_var() > 2000) throw std::length_error("dense SR solve limited to 2000 parameters");
  const auto t0 = std::chrono::steady_clock::now();
  Eigen::MatrixXcd s = sys.dense();
  s.diagonal().array() += cfg.a_diag;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(s);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("regularized SR matrix is not factorizable (singular?)");
  }
  UpdateResult res;
  res.delta = -cfg.eta * ldlt.solve(sys.force);
  if (!res.delta.allFinite()) {
    throw std::runtime_error("dense SR solve produced non-finite step (singular system)");
  }
  res.t_u_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

LmSolution lm_solve(const LmSystem& sys, double kappa, double a_diag,
                    double eigen_im_tol, double c_min) {
  const Eigen::Index n = sys.n_var();
  Eigen::MatrixXcd h_reg = sys.h_bar;
  h_reg.diagonal().tail(n).array() += kappa;
  Eigen::MatrixXcd s_reg = sys.s_bar;
  s_reg.diagonal().tail(n).array() += a_diag;

  // Reduce the pencil with the (shifted, invertible) overlap matrix and take
  // the Schur/eigen decomposition of the resulting regular problem.
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s_reg);
  const Eigen::MatrixXcd a = lu.solve(h_reg);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) throw LmStepError("eigen decomposition failed");

  Eigen::Index best = -1;
  double best_re = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex lambda = es.eigenvalues()[i];
    if (std::abs(lambda.imag()) > eigen_im_tol * std::abs(lambda.real()) + eigen_im_tol) {
      continue;
    }
    const auto u = es.eigenvectors().col(i);
    if (std::abs(u[0]) < c_min * u.norm()) continue;
    if (lambda.real() < best_re) {
      best_re = lambda.real();
      best = i;
    }
  }
  if (best < 0) {
    throw LmStepError("no admissible eigenpair (all complex or vanishing first component)");
  }
  LmSolution sol;
  sol.lambda0 = es.eigenvalues()[best];
  sol.c = es.eigenvectors()(0, best);
  sol.v0 = es.eigenvectors().col(best).tail(n);
  return sol;
}

}  // namespace nqsvmc
