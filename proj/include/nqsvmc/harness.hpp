// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "nqsvmc/optimizers.hpp"
#include "nqsvmc/oracle.hpp"

namespace nqsvmc {

inline constexpr const char* kBuildId = "nqsvmc-0.1.0";

struct ModelSpec {
  enum class Kind { Tfi, J1J2, PauliFile };

  Kind kind = Kind::Tfi;
  double coupling = 1.0;  // h for TFI, j2 for J1J2
  std::filesystem::path path;
  bool marshall = false;

  PauliHamiltonian build(int n_sites) const;
  std::string name() const;
};

enum class OptimizerKind { Sr, Lm };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& s);

/// One training run. Defaults mirror the lattice hyperparameter table:
/// n_s = 1e3 samples, a_diag = 0.01, eta = 0.01, kappa0 = 0.5, alpha = 2.
struct ExperimentConfig {
  ModelSpec model;
  int n_sites = 10;
  int alpha = 2;
  bool symmetric = true;
  bool visible_bias = true;
  double init_scale = 0.01;
  OptimizerKind optimizer = OptimizerKind::Lm;
  SamplerConfig sampler;
  SrConfig sr;
  LmConfig lm;
  int max_epochs = 200;
  std::uint64_t seed = 1;
  double threshold_b = 2e-3;
  std::optional<double> e0;      // reference energy override
  bool compute_reference = true; // solve the ED oracle when e0 is absent

  void validate() const;
  RbmShape rbm_shape() const {
    return {n_sites, alpha, symmetric, visible_bias};
  }
};

struct EpochRow {
  int epoch = 0;
  double energy = 0;
  double energy_variance = 0;
  double eps_rel = std::numeric_limits<double>::quiet_NaN();
  double accept_rate = 0;
  double t_s_seconds = 0;
  double t_u_seconds = 0;  // estimation + assembly + solve
  long n_flagged = 0;
  long n_spikes = 0;
  UpdateResult::Diagnostics diag;
};

struct RunRecord {
  std::vector<EpochRow> rows;
  std::optional<int> n_conv;  // first epoch with eps_rel <= b (1-indexed)
  std::optional<double> e0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string fail_reason;

  double total_update_time() const;    // T_u
  double total_sampling_time() const;
  double total_time() const;           // T = sum (t_s + t_u)
  std::vector<double> energies() const;
};

/// Training loop: sample -> estimate -> assemble -> solve -> update, stopping
/// at max_epochs or as soon as eps_rel <= b when a reference energy is known.
RunRecord train(const ExperimentConfig& cfg);

/// First 1-indexed epoch with |e0 - E(i)|/|e0| <= b, recomputed from the
/// stored energies so records can be re-evaluated at other thresholds.
std::optional<int> convergence_epoch(const RunRecord& record, double e0, double b);

struct Reliability {
  double ratio = 0;
  double two_sigma = 0;  // Wald interval half-width
  int n_converged = 0;
  int n_total = 0;
};

Reliability reliability(const std::vector<RunRecord>& records, double e0, double b);

/// Sampling time per epoch at which LM and SR total training times coincide:
/// (n_lm t_lm - n_sr t_sr) / (n_sr - n_lm) for per-epoch update times t.
double transition_time(double n_conv_lm, double t_u_lm, double n_conv_sr, double t_u_sr);

struct PhaseCell {
  int n_sites = 0;
  double coupling = 0;
  const RunRecord* sr = nullptr;
  const RunRecord* lm = nullptr;
};

struct PhaseRow {
  int n_sites = 0;
  double coupling = 0;
  double delta_t_u = 0;  // T_u^sr - T_u^lm, positive favours LM
  double delta_t = 0;    // T^sr   - T^lm
  bool complete = false;
};

std::vector<PhaseRow> phase_diagram(const std::vector<PhaseCell>& cells);

// ---- file formats -------------------------------------------------------

/// Fixed leading columns: epoch, energy_re, energy_var, eps_rel, accept_rate,
/// t_s_seconds, t_u_seconds; optimizer-specific diagnostics follow.
void write_run_csv(const RunRecord& record, const ExperimentConfig& cfg,
                   const std::filesystem::path& path);

void write_summary_json(const RunRecord& record, const ExperimentConfig& cfg,
                        const std::filesystem::path& path);

/// Everything `report` needs from one run.
struct RunSummary {
  std::string model;
  int n_sites = 0;
  double coupling = 0;
  std::string optimizer;
  std::uint64_t seed = 0;
  bool converged = false;
  std::optional<int> n_conv;
  std::optional<double> e0;
  double threshold_b = 0;
  double total_update_time = 0;
  double total_time = 0;
  double t_u_mean = 0;
  double t_s_mean = 0;
  std::vector<double> energies;
};

RunSummary load_summary_json(const std::filesystem::path& path);

}  // namespace nqsvmc
