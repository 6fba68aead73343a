// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nqsvmc/harness.hpp"

namespace nqsvmc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Exact-mode estimator checks (full enumeration, N <= 4):
/// force vector vs. finite-difference gradient, Fisher matrix Hermitian PSD,
/// LM pencil vs. dense quantum expectation values, zero-variance eigenstate.
CheckResult check_gradient_finite_difference(std::uint64_t seed);
CheckResult check_fisher_hermitian_psd(std::uint64_t seed);
CheckResult check_lm_dense_algebra(std::uint64_t seed);
CheckResult check_zero_variance();

/// One exact-mode SR step lowers the exact energy for >= 95 of 100 seeds.
CheckResult check_sr_descent(std::uint64_t seed);

/// Chains reproduce |psi|^2 Born weights within 5 sigma over 1e5 samples for
/// all three kernels at N = 3.
CheckResult check_sampler_born_weights(std::uint64_t seed);

/// Enumerated transition matrices satisfy detailed balance to 1e-12.
CheckResult check_detailed_balance(std::uint64_t seed);

/// Jordan-Wigner images satisfy canonical anticommutation relations on the
/// dense matrix level for <= 4 modes.
CheckResult check_jordan_wigner_algebra();

std::vector<CheckResult> validation_suite(std::uint64_t seed);

/// Prints one line per check; returns the number of failures.
int run_validation(std::ostream& out, std::uint64_t seed);

}  // namespace nqsvmc
