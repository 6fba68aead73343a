// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <filesystem>
#include <random>
#include <span>

#include "nqsvmc/hilbert.hpp"

namespace nqsvmc {

using Complex = std::complex<double>;

/// Numerically safe log(1 + exp(z)) on the principal branch per factor.
Complex log1p_exp(Complex z);
/// Numerically safe logistic function exp(z) / (1 + exp(z)).
Complex logistic(Complex z);

struct RbmShape {
  int n_sites = 0;
  int alpha = 2;           // hidden-unit density M/N
  bool symmetric = false;  // weight tying over the cyclic translation group
  bool visible_bias = true;

  int n_hidden() const { return alpha * n_sites; }
  Eigen::Index n_params() const;
  void validate() const;
};

/// Complex-parameter RBM amplitude over +-1 visible spins with {0,1} hidden
/// units traced out:
///
///   psi(x) = exp(a.x) * prod_j (1 + exp(theta_j)),  theta_j = b_j + sum_i w_ij x_i
///
/// The flattened parameter vector is ordered a, b, then w. Dense mode stores
/// w row-major by visible site; symmetric mode ties parameters over cyclic
/// translations (one shared visible bias, alpha hidden biases, alpha filters
/// of N weights each, laid out filter-major) and the flattened vector holds
/// the tied values.
class Rbm {
 public:
  struct Cache {
    Eigen::VectorXcd theta;  // current hidden-unit activations for a chain's x
  };

  explicit Rbm(RbmShape shape);

  /// Gaussian init: re/im of each tied parameter ~ N(0, scale^2).
  static Rbm random(RbmShape shape, double scale, std::mt19937_64& rng);

  const RbmShape& shape() const { return shape_; }
  int n_sites() const { return shape_.n_sites; }
  int n_hidden() const { return shape_.n_hidden(); }
  Eigen::Index n_params() const { return params_.size(); }

  const Eigen::VectorXcd& params() const { return params_; }
  void set_params(const Eigen::VectorXcd& p);
  void apply_update(const Eigen::VectorXcd& delta);

  Complex log_psi(const SpinConfiguration& x) const;

  Cache make_cache(const SpinConfiguration& x) const;
  /// log psi(x') - log psi(x) for x' = x with `flips` flipped; O(|flips| M).
  /// Imaginary part is defined modulo 2 pi.
  Complex log_psi_ratio(const SpinConfiguration& x, std::span<const int> flips,
                        const Cache& cache) const;
  /// Advances the cache to the flipped configuration.
  void apply_flips(const SpinConfiguration& x_old, std::span<const int> flips,
                   Cache& cache) const;

  /// Holomorphic log-derivatives with respect to the flattened parameters.
  Eigen::VectorXcd log_derivatives(const SpinConfiguration& x) const;
  Eigen::VectorXcd log_derivatives(const SpinConfiguration& x, const Cache& cache) const;

  void save(const std::filesystem::path& path) const;
  static Rbm load(const std::filesystem::path& path);

 private:
  void rebuild_dense_();

  RbmShape shape_;
  Eigen::VectorXcd params_;  // canonical flattened vector (tied when symmetric)
  // Dense evaluation views derived from params_.
  Eigen::VectorXcd a_;  // N
  Eigen::VectorXcd b_;  // M
  Eigen::MatrixXcd w_;  // N x M
};

}  // namespace nqsvmc
