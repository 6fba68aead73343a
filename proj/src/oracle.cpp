// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace nqsvmc {

namespace {

constexpr Eigen::Index kDenseLimit = 4096;

// Sparse row structure of H restricted to the sector basis.
struct SectorMatrix {
  std::vector<std::vector<std::pair<Eigen::Index, Complex>>> rows;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(rows.size()); ++r) {
      Complex acc = 0;
      for (const auto& [c, elem] : rows[static_cast<std::size_t>(r)]) acc += elem * v[c];
      out[r] = acc;
    }
    return out;
  }
};

SectorMatrix build_sector_matrix(const PauliHamiltonian& h,
                                 const std::vector<SpinConfiguration>& basis) {
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  index.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    index.emplace(basis[i].packed(), static_cast<Eigen::Index>(i));
  }
  SectorMatrix m;
  m.rows.resize(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (const auto& entry : h.connected_states(basis[r])) {
      auto it = index.find(entry.state.packed());
      if (it == index.end()) {
        throw std::domain_error("Hamiltonian does not preserve the requested sector");
      }
      m.rows[r].emplace_back(it->second, entry.element);
    }
  }
  return m;
}

ExactSolution dense_ground_state(const SectorMatrix& m, std::vector<SpinConfiguration> basis) {
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (const auto& [c, elem] : m.rows[static_cast<std::size_t>(r)]) dense(r, c) = elem;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolve failed");

  ExactSolution sol;
  sol.ground_energy = es.eigenvalues()[0];
  sol.ground_vector = es.eigenvectors().col(0);
  sol.basis = std::move(basis);
  const double tol = 1e-8 * std::max(1.0, std::abs(sol.ground_energy));
  sol.degeneracy = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (es.eigenvalues()[i] - sol.ground_energy <= tol) ++sol.degeneracy;
  }
  return sol;
}

ExactSolution lanczos_ground_state(const SectorMatrix& m,
                                   std::vector<SpinConfiguration> basis,
                                   double norm_bound) {
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index max_steps = std::min<Eigen::Index>(dim, 400);
  const double tol = 1e-11 * std::max(1.0, norm_bound);

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex{gauss(rng), gauss(rng)};
  v.normalize();

  std::vector<Eigen::VectorXcd> krylov{v};
  std::vector<double> alpha, beta;
  Eigen::VectorXd ritz;
  Eigen::MatrixXd tri_vectors;
  double residual_bound = std::numeric_limits<double>::infinity();

  for (Eigen::Index step = 0; step < max_steps; ++step) {
    Eigen::VectorXcd w = m.apply(krylov.back());
    const double a = std::real(krylov.back().dot(w));
    alpha.push_back(a);
    w -= a * krylov.back();
    if (krylov.size() > 1) w -= beta.back() * krylov[krylov.size() - 2];
    // Full reorthogonalization: small bases, so cost is irrelevant next to apply().
    for (const auto& q : krylov) w -= q.dot(w) * q;
    const double b = w.norm();

    const Eigen::Index k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < k) {
        tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    ritz = es.eigenvalues();
    tri_vectors = es.eigenvectors();
    residual_bound = b * std::abs(tri_vectors(k - 1, 0));
    if (residual_bound <= tol || b <= tol || k == dim) break;

    beta.push_back(b);
    krylov.push_back(w / b);
  }

  ExactSolution sol;
  sol.ground_energy = ritz[0];
  sol.ground_vector = Eigen::VectorXcd::Zero(dim);
  for (std::size_t i = 0; i < krylov.size(); ++i) {
    sol.ground_vector += tri_vectors(static_cast<Eigen::Index>(i), 0) * krylov[i];
  }
  sol.ground_vector.normalize();
  sol.basis = std::move(basis);
  const double deg_tol = 1e-8 * std::max(1.0, std::abs(sol.ground_energy));
  sol.degeneracy = 0;
  for (Eigen::Index i = 0; i < ritz.size(); ++i) {
    if (ritz[i] - sol.ground_energy <= deg_tol) ++sol.degeneracy;
  }
  return sol;
}

}  // namespace

ExactSolution exact_ground_state(const PauliHamiltonian& h, const SymmetrySector& sector) {
  if (!h.is_hermitian()) throw std::invalid_argument("ground-state solve needs a Hermitian H");
  auto basis = enumerate_basis(h.n_sites(), sector, kDefaultBasisCap);
  if (basis.empty()) throw std::domain_error("empty symmetry sector");
  SectorMatrix m = build_sector_matrix(h, basis);
  if (static_cast<Eigen::Index>(basis.size()) <= kDenseLimit) {
    return dense_ground_state(m, std::move(basis));
  }
  return lanczos_ground_state(m, std::move(basis), h.norm_bound());
}

double relative_error(double e_vmc, double e0) {
  if (e0 == 0.0) throw std::domain_error("relative error undefined for E0 = 0");
  return std::abs(e0 - e_vmc) / std::abs(e0);
}

}  // namespace nqsvmc
