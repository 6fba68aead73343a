// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "nqsvmc/estimators.hpp"

namespace nqsvmc {

struct SrConfig {
  double eta = 0.01;     // learning rate
  double a_diag = 0.01;  // diagonal shift of the Fisher matrix
  double cg_tol = 1e-8;
  int cg_max_iter = 1000;

  void validate() const {
    if (eta <= 0) throw std::invalid_argument("learning rate eta must be > 0");
    if (a_diag < 0) throw std::invalid_argument("diagonal shift must be >= 0");
  }
};

struct LmConfig {
  double kappa0 = 0.5;      // base Tikhonov regularizer (lattice default)
  double a_diag = 0.01;     // overlap-matrix shift (all diagonal entries but the first)
  double eigen_im_tol = 0.05;
  double c_min = 1e-8;      // minimum |first component| for an admissible eigenpair
  Eigen::Index max_params = 5000;

  void validate() const {
    if (kappa0 <= 0) throw std::invalid_argument("kappa0 must be > 0");
    if (a_diag < 0) throw std::invalid_argument("overlap shift must be >= 0");
  }
};

struct UpdateResult {
  Eigen::VectorXcd delta;
  struct Diagnostics {
    double chosen_kappa = 0;
    Complex lambda0{0, 0};
    double c_abs = 0;
    int cg_iterations = 0;
    double cg_residual = 0;
    bool dense_fallback = false;
    bool skipped = false;
    std::array<double, 3> correlated_energies{
        std::numeric_limits<double>::quiet_NaN(),
        std::numeric_limits<double>::quiet_NaN(),
        std::numeric_limits<double>::quiet_NaN()};
    double effective_sample_size = 0;
  } diagnostics;
  double t_u_seconds = 0;
};

/// No admissible eigenpair of the regularized pencil.
class LmStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// theta' <- theta - eta (S + a_diag I)^{-1} f via conjugate gradients on the
/// matrix-free centered-data products. Falls back to a dense solve when CG
/// stalls.
UpdateResult sr_step(const SrSystem& sys, const SrConfig& cfg);

/// Dense-factorization reference solver for the same system.
UpdateResult sr_solve_dense(const SrSystem& sys, const SrConfig& cfg);

struct LmSolution {
  Complex lambda0;
  Complex c;
  Eigen::VectorXcd v0;
};

/// Smallest admissible real eigenvalue of  (H + kappa P) u = lambda (S + a_diag P) u
/// where P zeroes the first diagonal entry. Eigenpairs with relative
/// imaginary part beyond eigen_im_tol or |u_0| < c_min ||u|| are spurious
/// artefacts of stochastic pencils and are skipped.
LmSolution lm_solve(const LmSystem& sys, double kappa, double a_diag,
                    double eigen_im_tol = 0.05, double c_min = 1e-8);

/// Reweighted energy of `model_new` over a batch sampled under `model_old`:
/// weights w_k = exp(2 Re[log psi_new - log psi_old]).
struct CorrelatedEnergy {
  double energy = std::numeric_limits<double>::infinity();
  double effective_sample_size = 0;
};

template <AmplitudeModel M>
CorrelatedEnergy correlated_energy(const SampleBatch& batch, const M& model_old,
                                   const M& model_new, const PauliHamiltonian& h) {
  (void)model_old;  // batch.log_amps cache the old amplitudes
  const Eigen::Index n = batch.size();
  if (n == 0) throw std::domain_error("empty sample batch");
  Eigen::VectorXd log_w(n);
  Eigen::VectorXd e_new(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const SpinConfiguration& x = batch.configs[static_cast<std::size_t>(k)];
    const auto cache = model_new.make_cache(x);
    const Complex log_new = model_new.log_psi(x);
    log_w[k] = 2.0 * (log_new - batch.log_amps[k]).real();
    e_new[k] = local_energy(h, model_new, x, cache).real();
  }
  const double shift = log_w.maxCoeff();
  if (!std::isfinite(shift)) return {};  // all ratios vanished or blew up
  double sum_w = 0, sum_we = 0, max_w = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = batch.weights[k] * std::exp(log_w[k] - shift);
    if (!std::isfinite(w) || !std::isfinite(e_new[k])) return {};
    sum_w += w;
    sum_we += w * e_new[k];
    max_w = std::max(max_w, w);
  }
  if (sum_w <= 0) return {};
  return {sum_we / sum_w, sum_w / max_w};
}

/// Solves the pencil for kappa_n = kappa0 * 10^n, n in {0,1,2}, scores each
/// candidate step v0/c by correlated sampling, and returns the minimizer.
/// When every candidate is inadmissible or non-finite the step is skipped
/// and the parameters are left unchanged.
template <AmplitudeModel M>
UpdateResult lm_step(const LmSystem& sys, const LmConfig& cfg, const SampleBatch& batch,
                     const M& model, const PauliHamiltonian& h) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Eigen::Index n_var = sys.n_var();

  UpdateResult best;
  best.delta = Eigen::VectorXcd::Zero(n_var);
  best.diagnostics.skipped = true;
  double best_score = std::numeric_limits<double>::infinity();

  for (int n = 0; n < 3; ++n) {
    const double kappa = cfg.kappa0 * std::pow(10.0, n);
    LmSolution sol;
    try {
      sol = lm_solve(sys, kappa, cfg.a_diag, cfg.eigen_im_tol, cfg.c_min);
    } catch (const LmStepError&) {
      continue;
    }
    Eigen::VectorXcd delta = sol.v0 / sol.c;
    if (!delta.allFinite()) continue;

    M trial = model;
    trial.apply_update(delta);
    const CorrelatedEnergy ce = correlated_energy(batch, model, trial, h);
    best.diagnostics.correlated_energies[static_cast<std::size_t>(n)] = ce.energy;
    if (ce.energy < best_score) {
      best_score = ce.energy;
      best.delta = std::move(delta);
      best.diagnostics.skipped = false;
      best.diagnostics.chosen_kappa = kappa;
      best.diagnostics.lambda0 = sol.lambda0;
      best.diagnostics.c_abs = std::abs(sol.c);
      best.diagnostics.effective_sample_size = ce.effective_sample_size;
    }
  }
  best.t_u_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return best;
}

}  // namespace nqsvmc
