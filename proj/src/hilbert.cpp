// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/hilbert.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nqsvmc {

SpinConfiguration::SpinConfiguration(std::vector<int> sites)
    : sites_(std::move(sites)) {
  if (sites_.empty()) throw std::invalid_argument("spin configuration must have N > 0 sites");
  for (int s : sites_) {
    if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
  }
}

SpinConfiguration SpinConfiguration::all_up(int n_sites) {
  if (n_sites <= 0) throw std::invalid_argument("n_sites must be positive");
  SpinConfiguration x;
  x.sites_.assign(static_cast<std::size_t>(n_sites), 1);
  return x;
}

SpinConfiguration SpinConfiguration::from_index(std::uint64_t index, int n_sites) {
  if (n_sites <= 0 || n_sites > 64) throw std::invalid_argument("n_sites out of range");
  SpinConfiguration x;
  x.sites_.resize(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) {
    const bool bit = (index >> (n_sites - 1 - i)) & 1u;
    x.sites_[static_cast<std::size_t>(i)] = bit ? -1 : 1;
  }
  return x;
}

int SpinConfiguration::magnetization() const {
  return std::accumulate(sites_.begin(), sites_.end(), 0);
}

int SpinConfiguration::n_up() const {
  return static_cast<int>(std::count(sites_.begin(), sites_.end(), 1));
}

std::uint64_t SpinConfiguration::packed() const {
  if (n_sites() > 64) throw std::length_error("packed() supports at most 64 sites");
  std::uint64_t key = 0;
  for (int i = 0; i < n_sites(); ++i) {
    key = (key << 1) | (sites_[static_cast<std::size_t>(i)] == -1 ? 1u : 0u);
  }
  return key;
}

std::string SpinConfiguration::to_string() const {
  std::string s;
  s.reserve(sites_.size());
  for (int v : sites_) s.push_back(v == 1 ? '+' : '-');
  return s;
}

SpinConfiguration SpinConfiguration::from_string(const std::string& s) {
  std::vector<int> sites;
  sites.reserve(s.size());
  for (char c : s) {
    if (c == '+') sites.push_back(1);
    else if (c == '-') sites.push_back(-1);
    else throw std::invalid_argument("configuration strings contain only '+'/'-'");
  }
  return SpinConfiguration(std::move(sites));
}

bool SymmetrySector::contains(const SpinConfiguration& x) const {
  switch (kind) {
    case Kind::Unrestricted: return true;
    case Kind::FixedMagnetization: return x.magnetization() == value;
    case Kind::FixedOccupation: return x.n_up() == value;
  }
  return false;
}

void SymmetrySector::validate(int n_sites) const {
  if (n_sites <= 0) throw std::domain_error("n_sites must be positive");
  switch (kind) {
    case Kind::Unrestricted:
      return;
    case Kind::FixedMagnetization:
      if (std::abs(value) > n_sites || (value - n_sites) % 2 != 0) {
        throw std::domain_error("magnetization sector is empty: |M_z| <= N and M_z = N (mod 2) required");
      }
      return;
    case Kind::FixedOccupation:
      if (value < 0 || value > n_sites) {
        throw std::domain_error("occupation sector is empty: 0 <= n_up <= N required");
      }
      return;
  }
}

std::string SymmetrySector::to_string() const {
  switch (kind) {
    case Kind::Unrestricted: return "unrestricted";
    case Kind::FixedMagnetization: return "mz=" + std::to_string(value);
    case Kind::FixedOccupation: return "nup=" + std::to_string(value);
  }
  return "?";
}

std::vector<SpinConfiguration> enumerate_basis(int n_sites,
                                               const SymmetrySector& sector,
                                               int site_cap) {
  sector.validate(n_sites);
  if (n_sites > site_cap) {
    throw std::length_error("basis enumeration capped at " + std::to_string(site_cap) +
                            " sites, got " + std::to_string(n_sites));
  }
  std::vector<SpinConfiguration> basis;
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  for (std::uint64_t k = 0; k < dim; ++k) {
    SpinConfiguration x = SpinConfiguration::from_index(k, n_sites);
    if (sector.contains(x)) basis.push_back(std::move(x));
  }
  return basis;
}

SpinConfiguration translate(const SpinConfiguration& x, int shift) {
  const int n = x.n_sites();
  std::vector<int> sites(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int src = (i - shift) % n;
    if (src < 0) src += n;
    sites[static_cast<std::size_t>(i)] = x[src];
  }
  return SpinConfiguration(std::move(sites));
}

SpinConfiguration random_config(int n_sites, const SymmetrySector& sector,
                                std::mt19937_64& rng) {
  sector.validate(n_sites);
  int n_up = 0;
  switch (sector.kind) {
    case SymmetrySector::Kind::Unrestricted: {
      std::vector<int> sites(static_cast<std::size_t>(n_sites));
      std::bernoulli_distribution coin(0.5);
      for (auto& s : sites) s = coin(rng) ? 1 : -1;
      return SpinConfiguration(std::move(sites));
    }
    case SymmetrySector::Kind::FixedMagnetization:
      n_up = (n_sites + sector.value) / 2;
      break;
    case SymmetrySector::Kind::FixedOccupation:
      n_up = sector.value;
      break;
  }
  // Uniform over the sector: place n_up up-spins via a Fisher-Yates shuffle.
  std::vector<int> sites(static_cast<std::size_t>(n_sites), -1);
  std::fill(sites.begin(), sites.begin() + n_up, 1);
  for (int i = n_sites - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(pick(rng))]);
  }
  return SpinConfiguration(std::move(sites));
}

}  // namespace nqsvmc
