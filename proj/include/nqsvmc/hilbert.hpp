// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace nqsvmc {

/// Basis state of N spin-1/2 sites. Entries are Pauli-Z eigenvalues, i.e.
/// every site holds exactly +1 or -1.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<int> sites);

  /// All sites set to +1.
  static SpinConfiguration all_up(int n_sites);

  /// Inverse of packed(): bit (N-1-i) of `index` selects site i,
  /// bit value 0 -> +1, bit value 1 -> -1.
  static SpinConfiguration from_index(std::uint64_t index, int n_sites);

  int n_sites() const { return static_cast<int>(sites_.size()); }
  int operator[](int i) const { return sites_[static_cast<std::size_t>(i)]; }
  std::span<const int> sites() const { return sites_; }

  void flip(int site) { sites_[static_cast<std::size_t>(site)] *= -1; }
  void flip(std::span<const int> flip_sites) {
    for (int s : flip_sites) flip(s);
  }

  /// Sum of all spin values (total Z magnetization).
  int magnetization() const;
  /// Number of sites with value +1.
  int n_up() const;

  /// Packs the configuration into an integer whose numeric order equals the
  /// canonical lexicographic order: site 0 is the most significant bit and
  /// +1 (bit 0) sorts before -1 (bit 1). Requires n_sites <= 64.
  std::uint64_t packed() const;

  /// '+'/'-' string, site 0 first. Used in CSV/JSON outputs.
  std::string to_string() const;
  static SpinConfiguration from_string(const std::string& s);

  bool operator==(const SpinConfiguration&) const = default;

 private:
  std::vector<int> sites_;
};

/// Restriction of the sampled/enumerated state space.
struct SymmetrySector {
  enum class Kind { Unrestricted, FixedMagnetization, FixedOccupation };

  Kind kind = Kind::Unrestricted;
  int value = 0;  // M_z for FixedMagnetization, n_up for FixedOccupation

  static SymmetrySector unrestricted() { return {}; }
  static SymmetrySector fixed_magnetization(int mz) {
    return {Kind::FixedMagnetization, mz};
  }
  static SymmetrySector fixed_occupation(int n_up) {
    return {Kind::FixedOccupation, n_up};
  }

  bool contains(const SpinConfiguration& x) const;
  /// Throws std::domain_error when the sector is malformed or empty for N sites.
  void validate(int n_sites) const;
  std::string to_string() const;
};

inline constexpr int kDefaultBasisCap = 16;

/// All configurations of the sector in lexicographic order (+1 before -1,
/// site 0 most significant). Throws when 2^N would exceed the cap.
std::vector<SpinConfiguration> enumerate_basis(int n_sites,
                                               const SymmetrySector& sector,
                                               int site_cap = kDefaultBasisCap);

/// Cyclic shift: result site i holds x[(i - shift) mod N].
SpinConfiguration translate(const SpinConfiguration& x, int shift);

/// Uniform draw within the sector; deterministic for a given rng state.
SpinConfiguration random_config(int n_sites, const SymmetrySector& sector,
                                std::mt19937_64& rng);

}  // namespace nqsvmc
