// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace nqsvmc {

PauliHamiltonian ModelSpec::build(int n_sites) const {
  auto h = [&]() {
    switch (kind) {
      case Kind::Tfi: return build_tfi(n_sites, coupling);
      case Kind::J1J2: return build_j1j2(n_sites, coupling);
      case Kind::PauliFile: return load_pauli_file(path);
    }
    throw std::logic_error("unknown model kind");
  }();
  return marshall ? marshall_transform(h) : h;
}

std::string ModelSpec::name() const {
  switch (kind) {
    case Kind::Tfi: return "tfi";
    case Kind::J1J2: return "j1j2";
    case Kind::PauliFile: return "pauli-file";
  }
  return "?";
}

std::string to_string(OptimizerKind k) {
  return k == OptimizerKind::Sr ? "sr" : "lm";
}

OptimizerKind optimizer_from_string(const std::string& s) {
  if (s == "sr") return OptimizerKind::Sr;
  if (s == "lm") return OptimizerKind::Lm;
  throw std::invalid_argument("unknown optimizer '" + s + "' (expected sr or lm)");
}

void ExperimentConfig::validate() const {
  if (n_sites <= 0) throw std::invalid_argument("n_sites must be positive");
  if (max_epochs < 0) throw std::invalid_argument("max_epochs must be >= 0");
  if (threshold_b <= 0) throw std::invalid_argument("convergence threshold b must be > 0");
  if (init_scale < 0) throw std::invalid_argument("init_scale must be >= 0");
  rbm_shape().validate();
  sampler.validate(n_sites);
  sr.validate();
  lm.validate();
}

double RunRecord::total_update_time() const {
  double t = 0;
  for (const auto& r : rows) t += r.t_u_seconds;
  return t;
}

double RunRecord::total_sampling_time() const {
  double t = 0;
  for (const auto& r : rows) t += r.t_s_seconds;
  return t;
}

double RunRecord::total_time() const {
  return total_update_time() + total_sampling_time();
}

std::vector<double> RunRecord::energies() const {
  std::vector<double> e;
  e.reserve(rows.size());
  for (const auto& r : rows) e.push_back(r.energy);
  return e;
}

RunRecord train(const ExperimentConfig& cfg) {
  cfg.validate();
  using clock = std::chrono::steady_clock;

  RunRecord record;
  record.seed = cfg.seed;
  try {
    const PauliHamiltonian h = cfg.model.build(cfg.n_sites);

    std::optional<double> e0 = cfg.e0;
    if (!e0 && cfg.compute_reference && cfg.n_sites <= kDefaultBasisCap) {
      e0 = exact_ground_state(h, cfg.sampler.sector).ground_energy;
    }
    record.e0 = e0;

    std::mt19937_64 init_rng(derive_seed(cfg.seed, 0));
    Rbm rbm = Rbm::random(cfg.rbm_shape(), cfg.init_scale, init_rng);
    const bool lm_mode = cfg.optimizer == OptimizerKind::Lm;

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
      const std::uint64_t epoch_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch));
      SampleBatch batch = run_chain(rbm, h, cfg.sampler, epoch_seed);

      const auto t1 = clock::now();
      LocalQuantities lq = compute_local_quantities(h, rbm, batch, lm_mode);
      UpdateResult upd;
      if (lm_mode) {
        LmSystem sys = assemble_lm(lq, cfg.lm.max_params);
        upd = lm_step(sys, cfg.lm, batch, rbm, h);
        if (upd.diagnostics.skipped) {
          std::cerr << "[nqsvmc] epoch " << epoch
                    << ": no admissible LM step, parameters unchanged\n";
        }
      } else {
        SrSystem sys = assemble_sr(lq);
        upd = sr_step(sys, cfg.sr);
      }
      if (!upd.diagnostics.skipped) rbm.apply_update(upd.delta);
      const double t_u = std::chrono::duration<double>(clock::now() - t1).count();

      EpochRow row;
      row.epoch = epoch;
      row.energy = lq.energy_mean.real();
      row.energy_variance = lq.energy_variance;
      row.accept_rate = batch.acceptance_rate();
      row.t_s_seconds = batch.t_s_seconds;
      row.t_u_seconds = t_u;
      row.n_flagged = lq.n_flagged;
      row.n_spikes = lq.n_spikes;
      row.diag = upd.diagnostics;
      if (e0) row.eps_rel = relative_error(row.energy, *e0);
      record.rows.push_back(row);

      if (e0 && row.eps_rel <= cfg.threshold_b) {
        record.n_conv = epoch;
        break;
      }
    }
  } catch (const std::exception& e) {
    record.failed = true;
    record.fail_reason = e.what();
  }
  return record;
}

std::optional<int> convergence_epoch(const RunRecord& record, double e0, double b) {
  for (const auto& row : record.rows) {
    if (relative_error(row.energy, e0) <= b) return row.epoch;
  }
  return std::nullopt;
}

Reliability reliability(const std::vector<RunRecord>& records, double e0, double b) {
  if (records.empty()) throw std::invalid_argument("reliability needs at least one record");
  Reliability rel;
  rel.n_total = static_cast<int>(records.size());
  for (const auto& r : records) {
    if (convergence_epoch(r, e0, b)) ++rel.n_converged;
  }
  rel.ratio = static_cast<double>(rel.n_converged) / rel.n_total;
  rel.two_sigma = 2.0 * std::sqrt(rel.ratio * (1.0 - rel.ratio) / rel.n_total);
  return rel;
}

double transition_time(double n_conv_lm, double t_u_lm, double n_conv_sr, double t_u_sr) {
  if (n_conv_lm == n_conv_sr) {
    throw std::domain_error("transition time undefined for equal epoch counts");
  }
  return (n_conv_lm * t_u_lm - n_conv_sr * t_u_sr) / (n_conv_sr - n_conv_lm);
}

std::vector<PhaseRow> phase_diagram(const std::vector<PhaseCell>& cells) {
  std::vector<PhaseRow> rows;
  rows.reserve(cells.size());
  for (const auto& cell : cells) {
    PhaseRow row;
    row.n_sites = cell.n_sites;
    row.coupling = cell.coupling;
    if (cell.sr != nullptr && cell.lm != nullptr) {
      row.complete = true;
      row.delta_t_u = cell.sr->total_update_time() - cell.lm->total_update_time();
      row.delta_t = cell.sr->total_time() - cell.lm->total_time();
    }
    rows.push_back(row);
  }
  return rows;
}

void write_run_csv(const RunRecord& record, const ExperimentConfig& cfg,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write run CSV: " + path.string());
  out.precision(12);
  out << "epoch,energy_re,energy_var,eps_rel,accept_rate,t_s_seconds,t_u_seconds";
  const bool lm = cfg.optimizer == OptimizerKind::Lm;
  if (lm) {
    out << ",chosen_kappa,lambda0_re,c_abs,ess,skipped";
  } else {
    out << ",cg_iterations,cg_residual,dense_fallback";
  }
  out << ",n_flagged,n_spikes\n";
  for (const auto& r : record.rows) {
    out << r.epoch << "," << r.energy << "," << r.energy_variance << "," << r.eps_rel
        << "," << r.accept_rate << "," << r.t_s_seconds << "," << r.t_u_seconds;
    if (lm) {
      out << "," << r.diag.chosen_kappa << "," << r.diag.lambda0.real() << ","
          << r.diag.c_abs << "," << r.diag.effective_sample_size << ","
          << (r.diag.skipped ? 1 : 0);
    } else {
      out << "," << r.diag.cg_iterations << "," << r.diag.cg_residual << ","
          << (r.diag.dense_fallback ? 1 : 0);
    }
    out << "," << r.n_flagged << "," << r.n_spikes << "\n";
  }
}

namespace {

nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["model"] = cfg.model.name();
  j["coupling"] = cfg.model.coupling;
  if (cfg.model.kind == ModelSpec::Kind::PauliFile) j["pauli_file"] = cfg.model.path.string();
  j["marshall"] = cfg.model.marshall;
  j["n_sites"] = cfg.n_sites;
  j["alpha"] = cfg.alpha;
  j["symmetric"] = cfg.symmetric;
  j["visible_bias"] = cfg.visible_bias;
  j["init_scale"] = cfg.init_scale;
  j["optimizer"] = to_string(cfg.optimizer);
  j["n_samples"] = cfg.sampler.n_samples;
  j["burn_in_sweeps"] = cfg.sampler.burn_in_sweeps;
  j["downsample_interval"] = cfg.sampler.downsample_interval;
  j["n_chains"] = cfg.sampler.n_chains;
  j["kernel"] = cfg.sampler.kernel == Kernel::Local      ? "local"
                : cfg.sampler.kernel == Kernel::Exchange ? "exchange"
                                                         : "hamiltonian";
  j["sector"] = cfg.sampler.sector.to_string();
  j["eta"] = cfg.sr.eta;
  j["a_diag"] = cfg.sr.a_diag;
  j["kappa0"] = cfg.lm.kappa0;
  j["max_epochs"] = cfg.max_epochs;
  j["seed"] = cfg.seed;
  j["threshold_b"] = cfg.threshold_b;
  return j;
}

}  // namespace

void write_summary_json(const RunRecord& record, const ExperimentConfig& cfg,
                        const std::filesystem::path& path) {
  nlohmann::json j;
  j["build_id"] = kBuildId;
  j["config"] = config_json(cfg);
  j["seed"] = record.seed;
  j["converged"] = record.n_conv.has_value();
  if (record.n_conv) j["n_conv"] = *record.n_conv;
  if (record.e0) j["e0"] = *record.e0;
  j["total_update_time"] = record.total_update_time();
  j["total_sampling_time"] = record.total_sampling_time();
  j["total_time"] = record.total_time();
  j["epochs_run"] = record.rows.size();
  j["failed"] = record.failed;
  if (record.failed) j["fail_reason"] = record.fail_reason;
  if (!record.rows.empty()) {
    j["t_u_mean"] = record.total_update_time() / static_cast<double>(record.rows.size());
    j["t_s_mean"] = record.total_sampling_time() / static_cast<double>(record.rows.size());
  }
  j["energies"] = record.energies();

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary JSON: " + path.string());
  out << j.dump(2) << "\n";
}

RunSummary load_summary_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summary JSON: " + path.string());
  nlohmann::json j;
  in >> j;
  RunSummary s;
  const auto& cfg = j.at("config");
  s.model = cfg.at("model").get<std::string>();
  s.n_sites = cfg.at("n_sites").get<int>();
  s.coupling = cfg.at("coupling").get<double>();
  s.optimizer = cfg.at("optimizer").get<std::string>();
  s.threshold_b = cfg.at("threshold_b").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.converged = j.at("converged").get<bool>();
  if (j.contains("n_conv")) s.n_conv = j.at("n_conv").get<int>();
  if (j.contains("e0")) s.e0 = j.at("e0").get<double>();
  s.total_update_time = j.at("total_update_time").get<double>();
  s.total_time = j.at("total_time").get<double>();
  s.t_u_mean = j.value("t_u_mean", 0.0);
  s.t_s_mean = j.value("t_s_mean", 0.0);
  s.energies = j.at("energies").get<std::vector<double>>();
  return s;
}

}  // namespace nqsvmc
