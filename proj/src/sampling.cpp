// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/sampling.hpp"

namespace nqsvmc {

void SamplerConfig::validate(int n_sites) const {
  if (n_samples < 0) throw std::invalid_argument("n_samples must be >= 0");
  if (burn_in_sweeps < 0) throw std::invalid_argument("burn_in_sweeps must be >= 0");
  if (downsample_interval < 0) throw std::invalid_argument("downsample_interval must be >= 0");
  if (n_chains <= 0) throw std::invalid_argument("n_chains must be positive");
  sector.validate(n_sites);
  if (kernel == Kernel::Exchange &&
      sector.kind == SymmetrySector::Kind::Unrestricted) {
    throw std::invalid_argument(
        "exchange kernel requires a fixed-magnetization or fixed-occupation sector");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a per-stream offset.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nqsvmc
