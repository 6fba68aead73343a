// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nqsvmc {

void finalize_local_quantities(LocalQuantities& lq) {
  const Eigen::Index n = lq.h_loc.size();
  if (n == 0) throw std::domain_error("empty sample batch");

  for (Eigen::Index s = 0; s < n; ++s) {
    if (!std::isfinite(lq.h_loc[s].real()) || !std::isfinite(lq.h_loc[s].imag())) {
      lq.weights[s] = 0.0;
      lq.h_loc[s] = 0.0;
      lq.log_derivs.row(s).setZero();
      if (lq.h_loc_derivs.size() > 0) lq.h_loc_derivs.row(s).setZero();
      ++lq.n_flagged;
    }
  }
  const double total = lq.weights.sum();
  if (total <= 0.0) throw std::domain_error("all samples flagged (vanishing wavefunction?)");
  lq.weights /= total;

  lq.energy_mean = pairwise_sum(Eigen::Index{0}, n, [&](Eigen::Index s) {
    return lq.weights[s] * lq.h_loc[s];
  });
  lq.energy_variance =
      pairwise_sum(Eigen::Index{0}, n, [&](Eigen::Index s) {
        return lq.weights[s] * std::norm(lq.h_loc[s] - lq.energy_mean);
      });

  // Outliers are logged but retained: silently truncating would bias energies.
  std::vector<double> mags;
  mags.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s) {
    if (lq.weights[s] > 0) mags.push_back(std::abs(lq.h_loc[s]));
  }
  if (!mags.empty()) {
    auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
    std::nth_element(mags.begin(), mid, mags.end());
    const double median = *mid;
    if (median > 0) {
      lq.n_spikes = std::count_if(mags.begin(), mags.end(),
                                  [median](double m) { return m > 1e3 * median; });
    }
  }
}

Eigen::VectorXcd SrSystem::apply(const Eigen::VectorXcd& v, double a_diag) const {
  Eigen::VectorXcd cv = centered * v;
  cv.array() *= weights.array();
  return centered.adjoint() * cv + a_diag * v;
}

Eigen::MatrixXcd SrSystem::dense() const {
  Eigen::MatrixXcd s = centered.adjoint() * weights.asDiagonal() * centered;
  // Hermitian by construction; make it exact against rounding in the product.
  s = 0.5 * (s + s.adjoint()).eval();
  return s;
}

namespace {

struct CenteredData {
  Eigen::MatrixXcd centered;
  Eigen::VectorXcd h_centered;
  Complex energy_mean;
};

CenteredData center(const LocalQuantities& lq) {
  const Eigen::Index n = lq.h_loc.size();
  const Eigen::Index n_var = lq.log_derivs.cols();
  Eigen::VectorXcd mean_d = pairwise_sum(Eigen::Index{0}, n, [&](Eigen::Index s) {
    return Eigen::VectorXcd(lq.weights[s] * lq.log_derivs.row(s).transpose());
  });
  CenteredData data;
  data.energy_mean = lq.energy_mean;
  data.centered = lq.log_derivs;
  data.centered.rowwise() -= mean_d.transpose();
  // Zero-weight (flagged) rows must not leak into matrix-free products.
  for (Eigen::Index s = 0; s < n; ++s) {
    if (lq.weights[s] == 0.0) data.centered.row(s).setZero();
  }
  data.h_centered = (lq.h_loc.array() - data.energy_mean).matrix();
  (void)n_var;
  return data;
}

}  // namespace

SrSystem assemble_sr(const LocalQuantities& lq) {
  if (lq.h_loc.size() == 0) throw std::domain_error("empty sample batch");
  CenteredData data = center(lq);
  SrSystem sys;
  sys.weights = lq.weights;
  sys.force = data.centered.adjoint() *
              (lq.weights.array() * data.h_centered.array()).matrix();
  sys.centered = std::move(data.centered);
  return sys;
}

LmSystem assemble_lm(const LocalQuantities& lq, Eigen::Index max_params) {
  if (lq.h_loc.size() == 0) throw std::domain_error("empty sample batch");
  if (lq.h_loc_derivs.size() == 0) {
    throw std::invalid_argument("LM assembly needs local-energy derivatives");
  }
  const Eigen::Index n_var = lq.log_derivs.cols();
  if (n_var > max_params) {
    throw std::length_error("LM restricted to " + std::to_string(max_params) +
                            " parameters, got " + std::to_string(n_var));
  }

  SrSystem sr = assemble_sr(lq);
  const Eigen::MatrixXcd& c = sr.centered;
  const Eigen::VectorXd& w = lq.weights;
  const Eigen::Index n = lq.h_loc.size();

  LmSystem lm;
  lm.s_bar = Eigen::MatrixXcd::Zero(n_var + 1, n_var + 1);
  lm.s_bar(0, 0) = 1.0;
  lm.s_bar.block(1, 1, n_var, n_var) = sr.dense();

  Eigen::VectorXcd mean_g = pairwise_sum(Eigen::Index{0}, n, [&](Eigen::Index s) {
    return Eigen::VectorXcd(w[s] * lq.h_loc_derivs.row(s).transpose());
  });

  lm.h_bar = Eigen::MatrixXcd::Zero(n_var + 1, n_var + 1);
  lm.h_bar(0, 0) = lq.energy_mean;
  lm.h_bar.block(1, 0, n_var, 1) = sr.force;
  // H_0k' = <<H_loc,k'>> + <<H_loc D_k'>> - <<H_loc>><<D_k'>> (plain products).
  lm.h_bar.block(0, 1, 1, n_var) =
      mean_g.transpose() +
      (w.array() * lq.h_loc.array()).matrix().transpose() * c;
  // H_kk' = tri-covariance + cov(D_k, H_loc,k'):
  //   <<c+_k H_loc c_k'>> + <<c+_k H_loc,k'>>.
  const Eigen::VectorXcd wh = (w.array() * lq.h_loc.array()).matrix();
  lm.h_bar.block(1, 1, n_var, n_var) =
      c.adjoint() * (wh.asDiagonal() * c) +
      c.adjoint() * (w.asDiagonal() * lq.h_loc_derivs);
  return lm;
}

}  // namespace nqsvmc
