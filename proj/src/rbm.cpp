// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/rbm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace nqsvmc {

Complex log1p_exp(Complex z) {
  // Keep the exponent non-positive so exp never overflows.
  if (z.real() > 0.0) return z + std::log(1.0 + std::exp(-z));
  return std::log(1.0 + std::exp(z));
}

Complex logistic(Complex z) {
  if (z.real() > 0.0) return 1.0 / (1.0 + std::exp(-z));
  const Complex e = std::exp(z);
  return e / (1.0 + e);
}

Eigen::Index RbmShape::n_params() const {
  const Eigen::Index bias = visible_bias ? 1 : 0;
  if (symmetric) return bias + alpha + static_cast<Eigen::Index>(alpha) * n_sites;
  return bias * n_sites + n_hidden() +
         static_cast<Eigen::Index>(n_sites) * n_hidden();
}

void RbmShape::validate() const {
  if (n_sites <= 0) throw std::invalid_argument("RBM needs n_sites > 0");
  if (alpha <= 0) throw std::invalid_argument("hidden-unit density alpha must be a positive integer");
}

Rbm::Rbm(RbmShape shape) : shape_(shape) {
  shape_.validate();
  params_ = Eigen::VectorXcd::Zero(shape_.n_params());
  rebuild_dense_();
}

Rbm Rbm::random(RbmShape shape, double scale, std::mt19937_64& rng) {
  if (scale < 0) throw std::invalid_argument("init scale must be >= 0");
  Rbm rbm(shape);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd p(rbm.n_params());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double re = gauss(rng) * scale;
    const double im = gauss(rng) * scale;
    p[k] = Complex{re, im};
  }
  rbm.set_params(p);
  return rbm;
}

void Rbm::set_params(const Eigen::VectorXcd& p) {
  if (p.size() != params_.size()) throw std::invalid_argument("parameter vector size mismatch");
  params_ = p;
  rebuild_dense_();
}

void Rbm::apply_update(const Eigen::VectorXcd& delta) {
  if (delta.size() != params_.size()) throw std::invalid_argument("update vector size mismatch");
  params_ += delta;
  rebuild_dense_();
}

void Rbm::rebuild_dense_() {
  const int n = shape_.n_sites;
  const int m = shape_.n_hidden();
  const int alpha = shape_.alpha;
  a_ = Eigen::VectorXcd::Zero(n);
  b_.resize(m);
  w_.resize(n, m);
  Eigen::Index k = 0;
  if (shape_.symmetric) {
    if (shape_.visible_bias) a_.setConstant(params_[k++]);
    for (int f = 0; f < alpha; ++f) {
      for (int t = 0; t < n; ++t) b_[f * n + t] = params_[k + f];
    }
    k += alpha;
    // Hidden unit j = f*N + t carries the f-th filter shifted by t sites:
    // w(i, f*N + t) = filter_f[(i - t) mod N].
    for (int f = 0; f < alpha; ++f) {
      for (int t = 0; t < n; ++t) {
        for (int i = 0; i < n; ++i) {
          const int d = ((i - t) % n + n) % n;
          w_(i, f * n + t) = params_[k + f * n + d];
        }
      }
    }
  } else {
    if (shape_.visible_bias) {
      a_ = params_.segment(0, n);
      k = n;
    }
    b_ = params_.segment(k, m);
    k += m;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) w_(i, j) = params_[k + i * m + j];
    }
  }
}

Complex Rbm::log_psi(const SpinConfiguration& x) const {
  Cache cache = make_cache(x);
  Complex result = 0;
  for (int i = 0; i < shape_.n_sites; ++i) result += a_[i] * static_cast<double>(x[i]);
  for (int j = 0; j < shape_.n_hidden(); ++j) result += log1p_exp(cache.theta[j]);
  return result;
}

Rbm::Cache Rbm::make_cache(const SpinConfiguration& x) const {
  if (x.n_sites() != shape_.n_sites) throw std::invalid_argument("configuration size mismatch");
  Cache cache;
  cache.theta = b_;
  for (int i = 0; i < shape_.n_sites; ++i) {
    cache.theta += static_cast<double>(x[i]) * w_.row(i).transpose();
  }
  return cache;
}

Complex Rbm::log_psi_ratio(const SpinConfiguration& x, std::span<const int> flips,
                           const Cache& cache) const {
  if (flips.empty()) return {0.0, 0.0};
  Complex delta = 0;
  Eigen::VectorXcd theta_new = cache.theta;
  for (int site : flips) {
    const double ds = -2.0 * static_cast<double>(x[site]);
    delta += a_[site] * ds;
    theta_new += ds * w_.row(site).transpose();
  }
  for (int j = 0; j < shape_.n_hidden(); ++j) {
    delta += log1p_exp(theta_new[j]) - log1p_exp(cache.theta[j]);
  }
  return delta;
}

void Rbm::apply_flips(const SpinConfiguration& x_old, std::span<const int> flips,
                      Cache& cache) const {
  for (int site : flips) {
    const double ds = -2.0 * static_cast<double>(x_old[site]);
    cache.theta += ds * w_.row(site).transpose();
  }
}

Eigen::VectorXcd Rbm::log_derivatives(const SpinConfiguration& x) const {
  return log_derivatives(x, make_cache(x));
}

Eigen::VectorXcd Rbm::log_derivatives(const SpinConfiguration& x, const Cache& cache) const {
  const int n = shape_.n_sites;
  const int m = shape_.n_hidden();
  const int alpha = shape_.alpha;
  Eigen::VectorXcd sig(m);
  for (int j = 0; j < m; ++j) sig[j] = logistic(cache.theta[j]);

  Eigen::VectorXcd d(params_.size());
  Eigen::Index k = 0;
  if (shape_.symmetric) {
    if (shape_.visible_bias) d[k++] = static_cast<double>(x.magnetization());
    for (int f = 0; f < alpha; ++f) {
      d[k + f] = sig.segment(f * n, n).sum();
    }
    k += alpha;
    // Tied weight derivative: sum of x_i sigma(theta_j) over the orbit of
    // hidden unit translations, i = (t + d) mod N for filter offset d.
    for (int f = 0; f < alpha; ++f) {
      for (int dd = 0; dd < n; ++dd) {
        Complex sum = 0;
        for (int t = 0; t < n; ++t) {
          sum += static_cast<double>(x[(t + dd) % n]) * sig[f * n + t];
        }
        d[k + f * n + dd] = sum;
      }
    }
  } else {
    if (shape_.visible_bias) {
      for (int i = 0; i < n; ++i) d[i] = static_cast<double>(x[i]);
      k = n;
    }
    d.segment(k, m) = sig;
    k += m;
    for (int i = 0; i < n; ++i) {
      d.segment(k + i * m, m) = static_cast<double>(x[i]) * sig;
    }
  }
  return d;
}

void Rbm::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["format"] = "rbm-params-v1";
  j["n_sites"] = shape_.n_sites;
  j["alpha"] = shape_.alpha;
  j["symmetric"] = shape_.symmetric;
  j["visible_bias"] = shape_.visible_bias;
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(2 * params_.size()));
  for (Eigen::Index k = 0; k < params_.size(); ++k) {
    flat.push_back(params_[k].real());
    flat.push_back(params_[k].imag());
  }
  j["params"] = flat;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write parameter file: " + path.string());
  out << j.dump(2) << "\n";
}

Rbm Rbm::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file: " + path.string());
  nlohmann::json j;
  in >> j;
  if (j.value("format", "") != "rbm-params-v1") {
    throw std::runtime_error("unrecognized parameter file format in " + path.string());
  }
  RbmShape shape;
  shape.n_sites = j.at("n_sites").get<int>();
  shape.alpha = j.at("alpha").get<int>();
  shape.symmetric = j.at("symmetric").get<bool>();
  shape.visible_bias = j.at("visible_bias").get<bool>();
  Rbm rbm(shape);
  const auto flat = j.at("params").get<std::vector<double>>();
  if (flat.size() != static_cast<std::size_t>(2 * rbm.n_params())) {
    throw std::runtime_error("parameter count mismatch in " + path.string());
  }
  Eigen::VectorXcd p(rbm.n_params());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    p[k] = Complex{flat[2 * static_cast<std::size_t>(k)],
                   flat[2 * static_cast<std::size_t>(k) + 1]};
  }
  rbm.set_params(p);
  return rbm;
}

}  // namespace nqsvmc
