// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <future>
#include <optional>
#include <thread>
#include <vector>

#include "nqsvmc/operators.hpp"
#include "nqsvmc/sampling.hpp"
#include "nqsvmc/wavefunction.hpp"

namespace nqsvmc {

/// Weighted pairwise (tree) summation over f(i), i in [0, n). Deterministic
/// and independent of thread count.
template <typename F>
auto pairwise_sum(Eigen::Index lo, Eigen::Index hi, F&& f) {
  using R = decltype(f(lo));
  if (hi - lo <= 64) {
    R acc = f(lo);
    for (Eigen::Index i = lo + 1; i < hi; ++i) acc += f(i);
    return acc;
  }
  const Eigen::Index mid = lo + (hi - lo) / 2;
  R left = pairwise_sum(lo, mid, f);
  R right = pairwise_sum(mid, hi, f);
  left += right;
  return left;
}

/// Per-sample quantities entering the SR/LM estimators.
struct LocalQuantities {
  Eigen::VectorXcd h_loc;        // local energies
  Eigen::MatrixXcd log_derivs;   // n_samples x n_var
  Eigen::MatrixXcd h_loc_derivs; // n_samples x n_var, empty unless requested
  Eigen::VectorXd weights;       // batch weights with flagged samples zeroed
  long n_flagged = 0;            // psi(x) = 0 / non-finite local energies
  long n_spikes = 0;             // |H_loc| beyond 1e3 x batch median, retained
  Complex energy_mean{0, 0};
  double energy_variance = 0;
};

/// Quantum Fisher matrix and force vector in centered-sample form. The
/// centered data supports matrix-free products, so the dense matrix is only
/// materialized on demand.
struct SrSystem {
  Eigen::MatrixXcd centered;  // n_samples x n_var centered log-derivatives
  Eigen::VectorXd weights;    // normalized sample weights
  Eigen::VectorXcd force;

  Eigen::Index n_var() const { return centered.cols(); }
  /// (S + a_diag I) v without forming S.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v, double a_diag) const;
  /// Dense S, exactly Hermitian.
  Eigen::MatrixXcd dense() const;
};

/// Overlap and Hamilton matrices of the linear-method pencil, dimension
/// (n_var + 1)^2 with index 0 the current wavefunction.
struct LmSystem {
  Eigen::MatrixXcd s_bar;
  Eigen::MatrixXcd h_bar;

  Eigen::Index n_var() const { return s_bar.rows() - 1; }
};

namespace detail {

inline std::vector<int> flip_sites(const SpinConfiguration& x, const SpinConfiguration& xp) {
  std::vector<int> flips;
  for (int i = 0; i < x.n_sites(); ++i) {
    if (x[i] != xp[i]) flips.push_back(i);
  }
  return flips;
}

}  // namespace detail

/// H_loc(x) = sum_x' <x|H|x'> psi(x') / psi(x).
template <AmplitudeModel M>
Complex local_energy(const PauliHamiltonian& h, const M& model, const SpinConfiguration& x,
                     const typename M::Cache& cache) {
  Complex e = 0;
  for (const auto& entry : h.connected_states(x)) {
    const auto flips = detail::flip_sites(x, entry.state);
    if (flips.empty()) {
      e += entry.element;
    } else {
      e += entry.element * std::exp(model.log_psi_ratio(x, flips, cache));
    }
  }
  return e;
}

template <AmplitudeModel M>
Complex local_energy(const PauliHamiltonian& h, const M& model, const SpinConfiguration& x) {
  return local_energy(h, model, x, model.make_cache(x));
}

/// H_loc,k(x) = H_k(x) - H_loc(x) D_k(x) with
/// H_k(x) = sum_x' <x|H|x'> D_k(x') psi(x')/psi(x).
template <AmplitudeModel M>
Eigen::VectorXcd local_energy_derivatives(const PauliHamiltonian& h, const M& model,
                                          const SpinConfiguration& x,
                                          const typename M::Cache& cache,
                                          const Eigen::VectorXcd& d_x, Complex h_loc) {
  Eigen::VectorXcd h_k = Eigen::VectorXcd::Zero(model.n_params());
  for (const auto& entry : h.connected_states(x)) {
    const auto flips = detail::flip_sites(x, entry.state);
    if (flips.empty()) {
      h_k += entry.element * d_x;
    } else {
      const Complex ratio = std::exp(model.log_psi_ratio(x, flips, cache));
      typename M::Cache flipped_cache = cache;
      model.apply_flips(x, flips, flipped_cache);
      h_k += (entry.element * ratio) * model.log_derivatives(entry.state, flipped_cache);
    }
  }
  return h_k - h_loc * d_x;
}

template <AmplitudeModel M>
Eigen::VectorXcd local_energy_derivatives(const PauliHamiltonian& h, const M& model,
                                          const SpinConfiguration& x) {
  const auto cache = model.make_cache(x);
  const Eigen::VectorXcd d_x = model.log_derivatives(x, cache);
  const Complex h_loc = local_energy(h, model, x, cache);
  return local_energy_derivatives(h, model, x, cache, d_x, h_loc);
}

/// Flags non-finite rows, counts spikes, and computes weighted energy stats.
void finalize_local_quantities(LocalQuantities& lq);

/// Fills all per-sample estimator inputs. Samples are independent, so rows
/// are computed in parallel; every reduction downstream is ordered.
template <AmplitudeModel M>
LocalQuantities compute_local_quantities(const PauliHamiltonian& h, const M& model,
                                         const SampleBatch& batch, bool with_energy_derivs) {
  const Eigen::Index n_samples = batch.size();
  const Eigen::Index n_var = model.n_params();
  LocalQuantities lq;
  lq.h_loc.resize(n_samples);
  lq.log_derivs.resize(n_samples, n_var);
  if (with_energy_derivs) lq.h_loc_derivs.resize(n_samples, n_var);
  lq.weights = batch.weights;

  auto fill_row = [&](Eigen::Index s) {
    const SpinConfiguration& x = batch.configs[static_cast<std::size_t>(s)];
    const auto cache = model.make_cache(x);
    const Eigen::VectorXcd d = model.log_derivatives(x, cache);
    const Complex e = local_energy(h, model, x, cache);
    lq.h_loc[s] = e;
    lq.log_derivs.row(s) = d.transpose();
    if (with_energy_derivs) {
      lq.h_loc_derivs.row(s) =
          local_energy_derivatives(h, model, x, cache, d, e).transpose();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (hw > 1 && n_samples > 256) {
    const Eigen::Index n_jobs = static_cast<Eigen::Index>(hw);
    std::vector<std::future<void>> jobs;
    for (Eigen::Index j = 0; j < n_jobs; ++j) {
      const Eigen::Index lo = j * n_samples / n_jobs;
      const Eigen::Index hi = (j + 1) * n_samples / n_jobs;
      jobs.push_back(std::async(std::launch::async, [&, lo, hi]() {
        for (Eigen::Index s = lo; s < hi; ++s) fill_row(s);
      }));
    }
    for (auto& job : jobs) job.get();
  } else {
    for (Eigen::Index s = 0; s < n_samples; ++s) fill_row(s);
  }

  finalize_local_quantities(lq);
  return lq;
}

/// S_kk' = <<D+_k D_k'>> - <<D+_k>><<D_k'>>, f_k = <<D+_k H_loc>> - <<D+_k>><<H_loc>>.
SrSystem assemble_sr(const LocalQuantities& lq);

/// Overlap/Hamilton pencil from the covariance and tri-covariance estimators.
/// The lower-right block of s_bar is exactly the SR matrix.
LmSystem assemble_lm(const LocalQuantities& lq, Eigen::Index max_params = 5000);

/// Full-enumeration counterparts with exact Born weights |psi|^2 / sum |psi|^2.
template <AmplitudeModel M>
SampleBatch exact_batch(const M& model, const SymmetrySector& sector, int site_cap = 14) {
  const auto basis = enumerate_basis(model.n_sites(), sector, site_cap);
  std::vector<SpinConfiguration> configs;
  Eigen::VectorXcd log_amps(static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd log_weights(static_cast<Eigen::Index>(basis.size()));
  Eigen::Index n = 0;
  for (const auto& x : basis) {
    const Complex la = model.log_psi(x);
    if (!std::isfinite(la.real())) continue;  // psi(x) = 0: excluded, weight would be 0
    configs.push_back(x);
    log_amps[n] = la;
    log_weights[n] = 2.0 * la.real();
    ++n;
  }
  if (n == 0) throw std::domain_error("wavefunction vanishes on the whole sector");
  SampleBatch batch;
  batch.n_sites = model.n_sites();
  batch.configs = std::move(configs);
  batch.log_amps = log_amps.head(n);
  const double shift = log_weights.head(n).maxCoeff();
  batch.weights = (log_weights.head(n).array() - shift).exp();
  batch.weights /= batch.weights.sum();
  return batch;
}

template <AmplitudeModel M>
struct ExactExpectations {
  SampleBatch batch;
  LocalQuantities locals;
  SrSystem sr;
  std::optional<LmSystem> lm;
  double energy = 0;
};

/// Realizes every estimator without sampling; the assembly code paths are the
/// same ones the stochastic estimates use.
template <AmplitudeModel M>
ExactExpectations<M> exact_expectations(const PauliHamiltonian& h, const M& model,
                                        const SymmetrySector& sector, bool with_lm,
                                        int site_cap = 14) {
  ExactExpectations<M> out;
  out.batch = exact_batch(model, sector, site_cap);
  out.locals = compute_local_quantities(h, model, out.batch, with_lm);
  out.sr = assemble_sr(out.locals);
  if (with_lm) out.lm = assemble_lm(out.locals);
  out.energy = out.locals.energy_mean.real();
  return out;
}

}  // namespace nqsvmc
