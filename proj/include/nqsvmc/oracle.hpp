// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nqsvmc/operators.hpp"

namespace nqsvmc {

struct ExactSolution {
  double ground_energy = 0;
  Eigen::VectorXcd ground_vector;  // amplitudes over `basis`
  std::vector<SpinConfiguration> basis;
  int degeneracy = 1;
};

/// Lowest eigenpair of H restricted to the sector. Dense below dimension
/// 4096, Lanczos with full reorthogonalization above (sector cap 2^16).
/// Throws std::domain_error when H maps sector states outside the sector.
ExactSolution exact_ground_state(const PauliHamiltonian& h,
                                 const SymmetrySector& sector = SymmetrySector::unrestricted());

/// |E0 - E_vmc| / |E0|; E0 = 0 is a domain error.
double relative_error(double e_vmc, double e0);

}  // namespace nqsvmc
