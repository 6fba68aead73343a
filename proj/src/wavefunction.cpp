// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

namespace nqsvmc {

LookupWavefunction::LookupWavefunction(std::vector<SpinConfiguration> basis,
                                       Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (basis_.empty()) throw std::invalid_argument("lookup wavefunction needs a non-empty basis");
  if (static_cast<Eigen::Index>(basis_.size()) != amplitudes_.size()) {
    throw std::invalid_argument("basis/amplitude size mismatch");
  }
  n_sites_ = basis_.front().n_sites();
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_.emplace(basis_[i].packed(), static_cast<Eigen::Index>(i));
  }
}

Eigen::Index LookupWavefunction::index_of(const SpinConfiguration& x) const {
  auto it = index_.find(x.packed());
  if (it == index_.end()) {
    throw std::out_of_range("configuration outside the lookup basis: " + x.to_string());
  }
  return it->second;
}

Complex LookupWavefunction::log_psi(const SpinConfiguration& x) const {
  const Complex amp = amplitudes_[index_of(x)];
  if (amp == Complex{0.0, 0.0}) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  return std::log(amp);
}

Complex LookupWavefunction::log_psi_ratio(const SpinConfiguration& x,
                                          std::span<const int> flips,
                                          const Cache&) const {
  if (flips.empty()) return {0.0, 0.0};
  SpinConfiguration xp = x;
  xp.flip(flips);
  return log_psi(xp) - log_psi(x);
}

Eigen::VectorXcd LookupWavefunction::log_derivatives(const SpinConfiguration& x,
                                                     const Cache&) const {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(amplitudes_.size());
  d[index_of(x)] = 1.0;
  return d;
}

}  // namespace nqsvmc
