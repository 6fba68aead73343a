// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nqsvmc/hilbert.hpp"

namespace nqsvmc {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { X, Y, Z };

char pauli_char(Pauli p);

/// One weighted Pauli string, stored sparsely as (site, operator) factors
/// sorted by site index. The empty factor list is the identity.
struct PauliString {
  std::vector<std::pair<int, Pauli>> factors;
  Complex coefficient{1.0, 0.0};

  PauliString() = default;
  PauliString(std::vector<std::pair<int, Pauli>> f, Complex coeff);

  int max_site() const;
  /// Factor-set comparison key (coefficient excluded).
  bool same_factors(const PauliString& other) const { return factors == other.factors; }
};

/// Product of two Pauli strings, tracking the accumulated phase.
PauliString operator*(const PauliString& lhs, const PauliString& rhs);

/// Connected basis state together with its matrix element <x|H|x'>.
struct ConnectedEntry {
  SpinConfiguration state;
  Complex element;
};

/// Weighted sum of Pauli strings on a fixed number of sites. Immutable after
/// construction; terms are canonicalized (sorted, merged, near-zero dropped).
class PauliHamiltonian {
 public:
  PauliHamiltonian(int n_sites, std::vector<PauliString> terms);

  int n_sites() const { return n_sites_; }
  const std::vector<PauliString>& terms() const { return terms_; }

  /// A canonicalized Pauli sum is Hermitian iff every coefficient is real.
  bool is_hermitian(double tol = 1e-12) const;

  /// Sum of |coefficient|, an upper bound on the operator norm.
  double norm_bound() const;

  /// All x' with <x|H|x'> != 0, each exactly once, ordered by packed index.
  /// Includes the diagonal entry when nonzero.
  std::vector<ConnectedEntry> connected_states(const SpinConfiguration& x) const;

  /// Off-diagonal connected states only (Hamiltonian-move proposal support).
  std::vector<ConnectedEntry> offdiagonal_connected(const SpinConfiguration& x) const;

 private:
  int n_sites_;
  std::vector<PauliString> terms_;
};

/// Transverse-field Ising chain, periodic: -sum_i Z_i Z_{i+1} - h sum_i X_i.
PauliHamiltonian build_tfi(int n_sites, double h);

/// Heisenberg chain with next-nearest-neighbour coupling, periodic:
/// sum_<i,j> (XX+YY+ZZ) + j2 sum_<<i,j>> (XX+YY+ZZ), nearest coupling fixed to 1.
PauliHamiltonian build_j1j2(int n_sites, double j2);

/// Conjugation by the sublattice rotation that maps X -> -X, Y -> -Y on odd
/// sites (Z unchanged). Spectrum preserving; requires even N.
PauliHamiltonian marshall_transform(const PauliHamiltonian& h);

/// One- or two-body fermionic term: coefficient * prod a^dag_{c} * prod a_{a}.
struct FermionTerm {
  std::vector<int> creation;
  std::vector<int> annihilation;
  Complex coefficient{1.0, 0.0};
};

/// Jordan-Wigner image of a sum of fermionic terms on `modes` modes.
/// a_j -> (prod_{i<j} Z_i)(X_j - iY_j)/2, a^dag_j -> (prod_{i<j} Z_i)(X_j + iY_j)/2.
PauliHamiltonian jordan_wigner(int modes, const std::vector<FermionTerm>& terms);

/// Line-oriented text format: one `(re[,im]) P<site> P<site> ...` term per
/// line, `#` comments, and a `sites <N>` header. See README for the grammar.
PauliHamiltonian load_pauli_file(const std::filesystem::path& path,
                                 bool require_hermitian = true);
PauliHamiltonian parse_pauli_text(std::istream& in, const std::string& origin,
                                  bool require_hermitian = true);
std::string serialize_pauli(const PauliHamiltonian& h);

/// Dense matrix assembled term-by-term from Kronecker products of single-site
/// Pauli factors. Independent of connected_states; intended for N <= 12.
Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h);

}  // namespace nqsvmc
