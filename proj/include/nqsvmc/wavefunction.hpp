// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <concepts>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "nqsvmc/hilbert.hpp"
#include "nqsvmc/rbm.hpp"

namespace nqsvmc {

/// Anything that can serve as a variational amplitude: samplers and
/// estimators only touch models through this surface.
template <typename M>
concept AmplitudeModel = requires(const M m, const SpinConfiguration& x,
                                  std::span<const int> flips,
                                  typename M::Cache& cache) {
  { m.n_sites() } -> std::convertible_to<int>;
  { m.n_params() } -> std::convertible_to<Eigen::Index>;
  { m.log_psi(x) } -> std::convertible_to<Complex>;
  { m.make_cache(x) } -> std::same_as<typename M::Cache>;
  { m.log_psi_ratio(x, flips, cache) } -> std::convertible_to<Complex>;
  { m.apply_flips(x, flips, cache) };
  { m.log_derivatives(x, cache) } -> std::convertible_to<Eigen::VectorXcd>;
};

static_assert(AmplitudeModel<Rbm>);

/// Wavefunction backed by a table of basis amplitudes (e.g. an ED ground
/// vector). Its variational parameters are the per-configuration
/// log-amplitudes, so D_k(x) is the indicator of x. Zero amplitudes are
/// representable; their log is -inf and ratios into them vanish.
class LookupWavefunction {
 public:
  struct Cache {};

  LookupWavefunction(std::vector<SpinConfiguration> basis, Eigen::VectorXcd amplitudes);

  int n_sites() const { return n_sites_; }
  Eigen::Index n_params() const { return amplitudes_.size(); }

  Complex log_psi(const SpinConfiguration& x) const;
  Cache make_cache(const SpinConfiguration&) const { return {}; }
  Complex log_psi_ratio(const SpinConfiguration& x, std::span<const int> flips,
                        const Cache&) const;
  void apply_flips(const SpinConfiguration&, std::span<const int>, Cache&) const {}
  Eigen::VectorXcd log_derivatives(const SpinConfiguration& x, const Cache& = {}) const;

  Eigen::Index index_of(const SpinConfiguration& x) const;

 private:
  int n_sites_;
  std::vector<SpinConfiguration> basis_;
  Eigen::VectorXcd amplitudes_;
  std::unordered_map<std::uint64_t, Eigen::Index> index_;
};

static_assert(AmplitudeModel<LookupWavefunction>);

}  // namespace nqsvmc
