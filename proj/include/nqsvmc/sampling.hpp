// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <vector>

#include "nqsvmc/operators.hpp"
#include "nqsvmc/wavefunction.hpp"

namespace nqsvmc {

enum class Kernel { Local, Exchange, Hamiltonian };

struct SamplerConfig {
  Kernel kernel = Kernel::Local;
  long n_samples = 1000;
  int burn_in_sweeps = 100;
  long downsample_interval = 0;  // proposal attempts between samples; 0 -> N
  int n_chains = 4;
  SymmetrySector sector = SymmetrySector::unrestricted();

  void validate(int n_sites) const;
};

/// Markov-chain output: configurations with cached log-amplitudes and
/// normalized weights (uniform for MCMC batches, Born weights in exact mode).
struct SampleBatch {
  int n_sites = 0;
  std::vector<SpinConfiguration> configs;
  Eigen::VectorXcd log_amps;
  Eigen::VectorXd weights;
  long proposed = 0;
  long accepted = 0;
  double t_s_seconds = 0.0;

  long size() const { return static_cast<long>(configs.size()); }
  double acceptance_rate() const {
    return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  }
};

/// Deterministic per-chain seed derivation (splitmix64 over seed ^ f(stream)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct Proposal {
  std::vector<int> flips;
  double log_q_ratio = 0.0;
  bool valid = false;
};

template <AmplitudeModel M>
struct ChainState {
  SpinConfiguration x;
  typename M::Cache cache;
  Complex log_amp;
  std::mt19937_64 rng;
  long accepted = 0;
  long proposed = 0;
  long accepts_since_resync = 0;
};

template <AmplitudeModel M>
ChainState<M> make_chain(const M& model, const SymmetrySector& sector, std::uint64_t seed) {
  ChainState<M> state;
  state.rng.seed(seed);
  state.x = random_config(model.n_sites(), sector, state.rng);
  state.cache = model.make_cache(state.x);
  state.log_amp = model.log_psi(state.x);
  return state;
}

inline Proposal propose_local(const SpinConfiguration& x, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> site(0, x.n_sites() - 1);
  return {{site(rng)}, 0.0, true};
}

/// Uniform over the N nearest-neighbour bonds; aligned bonds are rejected
/// proposals, which keeps the kernel symmetric on the magnetization sector.
inline Proposal propose_exchange(const SpinConfiguration& x, std::mt19937_64& rng) {
  const int n = x.n_sites();
  std::uniform_int_distribution<int> bond(0, n - 1);
  const int i = bond(rng);
  const int j = (i + 1) % n;
  if (x[i] == x[j]) return {};
  return {{i, j}, 0.0, true};
}

/// Uniform over the off-diagonal connected states of x. The proposal-count
/// correction log(|C(x)| / |C(x')|) restores detailed balance on graphs with
/// irregular connectivity.
inline Proposal propose_hamiltonian(const SpinConfiguration& x, const PauliHamiltonian& h,
                                    std::mt19937_64& rng) {
  const auto connected = h.offdiagonal_connected(x);
  if (connected.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, connected.size() - 1);
  const SpinConfiguration& xp = connected[pick(rng)].state;
  std::vector<int> flips;
  for (int i = 0; i < x.n_sites(); ++i) {
    if (x[i] != xp[i]) flips.push_back(i);
  }
  const auto reverse = h.offdiagonal_connected(xp);
  const double log_q = std::log(static_cast<double>(connected.size())) -
                       std::log(static_cast<double>(reverse.size()));
  return {std::move(flips), log_q, true};
}

template <AmplitudeModel M>
Proposal propose(const ChainState<M>& state, Kernel kernel, const PauliHamiltonian* h,
                 std::mt19937_64& rng) {
  switch (kernel) {
    case Kernel::Local: return propose_local(state.x, rng);
    case Kernel::Exchange: return propose_exchange(state.x, rng);
    case Kernel::Hamiltonian:
      if (h == nullptr) throw std::invalid_argument("Hamiltonian kernel needs a Hamiltonian");
      return propose_hamiltonian(state.x, *h, rng);
  }
  return {};
}

/// One Metropolis-Hastings attempt: accept with min(1, |psi'/psi|^2 q).
template <AmplitudeModel M>
void mh_step(ChainState<M>& state, const M& model, Kernel kernel,
             const PauliHamiltonian* h = nullptr) {
  ++state.proposed;
  Proposal prop = propose(state, kernel, h, state.rng);
  if (!prop.valid) return;

  const Complex delta_log = model.log_psi_ratio(state.x, prop.flips, state.cache);
  const double log_accept = 2.0 * delta_log.real() + prop.log_q_ratio;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (log_accept >= 0.0 || unit(state.rng) < std::exp(log_accept)) {
    model.apply_flips(state.x, prop.flips, state.cache);
    state.x.flip(prop.flips);
    state.log_amp += delta_log;
    ++state.accepted;
    if (++state.accepts_since_resync >= 4096) {
      state.cache = model.make_cache(state.x);
      state.log_amp = model.log_psi(state.x);
      state.accepts_since_resync = 0;
    }
  }
}

template <AmplitudeModel M>
void run_single_chain(const M& model, const PauliHamiltonian& h, const SamplerConfig& cfg,
                      std::uint64_t chain_seed, long chain_samples, SampleBatch& out) {
  const int n = model.n_sites();
  const long interval = cfg.downsample_interval > 0 ? cfg.downsample_interval : n;
  const PauliHamiltonian* hp = cfg.kernel == Kernel::Hamiltonian ? &h : nullptr;

  ChainState<M> state = make_chain(model, cfg.sector, chain_seed);
  for (long k = 0; k < static_cast<long>(cfg.burn_in_sweeps) * n; ++k) {
    mh_step(state, model, cfg.kernel, hp);
  }
  for (long s = 0; s < chain_samples; ++s) {
    for (long k = 0; k < interval; ++k) mh_step(state, model, cfg.kernel, hp);
    out.configs.push_back(state.x);
    out.log_amps[static_cast<Eigen::Index>(out.configs.size()) - 1] = state.log_amp;
  }
  out.proposed = state.proposed;
  out.accepted = state.accepted;
}

/// Runs cfg.n_chains independent chains and concatenates their samples in
/// chain order, so the batch is independent of scheduling.
template <AmplitudeModel M>
SampleBatch run_chain(const M& model, const PauliHamiltonian& h, const SamplerConfig& cfg,
                      std::uint64_t seed) {
  cfg.validate(model.n_sites());
  const auto t0 = std::chrono::steady_clock::now();

  SampleBatch batch;
  batch.n_sites = model.n_sites();
  if (cfg.n_samples == 0) {
    batch.weights.resize(0);
    batch.log_amps.resize(0);
    batch.t_s_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return batch;
  }

  const int n_chains = std::max(1, cfg.n_chains);
  std::vector<SampleBatch> parts(static_cast<std::size_t>(n_chains));
  std::vector<std::future<void>> jobs;
  for (int c = 0; c < n_chains; ++c) {
    long chain_samples = cfg.n_samples / n_chains + (c < cfg.n_samples % n_chains ? 1 : 0);
    auto& part = parts[static_cast<std::size_t>(c)];
    part.log_amps.resize(chain_samples);
    part.configs.reserve(static_cast<std::size_t>(chain_samples));
    const std::uint64_t chain_seed = derive_seed(seed, static_cast<std::uint64_t>(c));
    jobs.push_back(std::async(n_chains > 1 ? std::launch::async : std::launch::deferred,
                              [&, chain_seed, chain_samples, c]() {
                                run_single_chain(model, h, cfg, chain_seed, chain_samples,
                                                 parts[static_cast<std::size_t>(c)]);
                              }));
  }
  for (auto& j : jobs) j.get();

  long total = 0;
  for (const auto& part : parts) total += part.size();
  batch.log_amps.resize(total);
  Eigen::Index pos = 0;
  for (auto& part : parts) {
    for (long s = 0; s < part.size(); ++s) {
      batch.configs.push_back(std::move(part.configs[static_cast<std::size_t>(s)]));
      batch.log_amps[pos++] = part.log_amps[s];
    }
    batch.proposed += part.proposed;
    batch.accepted += part.accepted;
  }
  batch.weights = Eigen::VectorXd::Constant(total, 1.0 / static_cast<double>(total));
  batch.t_s_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return batch;
}

}  // namespace nqsvmc
