// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: train a single run, sweep a parameter grid,
// generate exact-energy fixtures, aggregate run outputs, or run the
// exact-mode validation suite.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nqsvmc/validation.hpp"

namespace fs = std::filesystem;
using namespace nqsvmc;

namespace {

SymmetrySector parse_sector(const std::string& text) {
  if (text == "unrestricted" || text.empty()) return SymmetrySector::unrestricted();
  if (text.rfind("mz=", 0) == 0) return SymmetrySector::fixed_magnetization(std::stoi(text.substr(3)));
  if (text.rfind("nup=", 0) == 0) return SymmetrySector::fixed_occupation(std::stoi(text.substr(4)));
  throw CLI::ValidationError("--sector", "expected 'unrestricted', 'mz=<int>' or 'nup=<int>'");
}

Kernel parse_kernel(const std::string& text) {
  if (text == "local") return Kernel::Local;
  if (text == "exchange") return Kernel::Exchange;
  if (text == "hamiltonian") return Kernel::Hamiltonian;
  throw CLI::ValidationError("--kernel", "expected local, exchange or hamiltonian");
}

ModelSpec::Kind parse_model(const std::string& text) {
  if (text == "tfi") return ModelSpec::Kind::Tfi;
  if (text == "j1j2") return ModelSpec::Kind::J1J2;
  if (text == "pauli-file") return ModelSpec::Kind::PauliFile;
  throw CLI::ValidationError("--model", "expected tfi, j1j2 or pauli-file");
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("NQSVMC_OUT")) return env;
  return "runs";
}

int default_jobs() {
  if (const char* env = std::getenv("NQSVMC_THREADS")) return std::max(1, std::atoi(env));
  return 1;
}

// Options shared by train and sweep; raw strings stay unparsed so that
// model-specific defaults only fill in what the user left untouched.
struct RunOptions {
  std::string model = "tfi";
  std::string h_file;
  int n_sites = 10;
  std::string optimizer = "lm";
  int alpha = 2;
  bool dense = false;
  bool no_visible_bias = false;
  double init_scale = 0.01;
  long n_samples = -1;
  int burn_in = 100;
  long interval = -1;
  int chains = 4;
  std::string kernel;
  std::string sector;
  bool marshall_on = false;
  bool marshall_off = false;
  double eta = 0.01;
  double a_diag = 0.01;
  double kappa0 = -1;
  int epochs = -1;
  double b = 2e-3;
  double e0 = std::numeric_limits<double>::quiet_NaN();
  double coupling = std::numeric_limits<double>::quiet_NaN();
  std::string config_file;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->set_help_flag("--help", "Print help");  // frees -h/--h for the field strength
  cmd->add_option("--config", o.config_file, "JSON config file (flags override it)");
  cmd->add_option("--model", o.model, "Model: tfi, j1j2 or pauli-file")->capture_default_str();
  cmd->add_option("--file", o.h_file, "Hamiltonian text file (pauli-file model)");
  cmd->add_option("--N", o.n_sites, "Number of sites")->capture_default_str();
  cmd->add_option("--h", o.coupling, "TFI field strength");
  cmd->add_option("--j2", o.coupling, "J1J2 next-nearest coupling");
  cmd->add_option("--opt", o.optimizer, "Optimizer: sr or lm")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Hidden-unit density")->capture_default_str();
  cmd->add_flag("--dense", o.dense, "Dense RBM instead of the translation-symmetric one");
  cmd->add_flag("--no-visible-bias", o.no_visible_bias, "Drop visible bias parameters");
  cmd->add_option("--init-scale", o.init_scale, "Gaussian init width")->capture_default_str();
  cmd->add_option("--samples", o.n_samples, "MCMC samples per epoch (default 1e3, 1e4 for pauli-file)");
  cmd->add_option("--burn-in", o.burn_in, "Burn-in sweeps")->capture_default_str();
  cmd->add_option("--interval", o.interval, "Downsampling interval in proposal attempts (default N, 10N for pauli-file)");
  cmd->add_option("--chains", o.chains, "Independent Markov chains")->capture_default_str();
  cmd->add_option("--kernel", o.kernel, "Sampler kernel: local, exchange, hamiltonian");
  cmd->add_option("--sector", o.sector, "Symmetry sector: unrestricted, mz=<int>, nup=<int>");
  cmd->add_flag("--marshall", o.marshall_on, "Apply the Marshall sign rotation (default: on for j1j2)");
  cmd->add_flag("--no-marshall", o.marshall_off, "Disable the Marshall sign rotation");
  cmd->add_option("--eta", o.eta, "SR learning rate")->capture_default_str();
  cmd->add_option("--a-diag", o.a_diag, "Diagonal shift")->capture_default_str();
  cmd->add_option("--kappa0", o.kappa0, "Base Tikhonov regularizer (default 0.5, 0.1 for pauli-file)");
  cmd->add_option("--epochs", o.epochs, "Maximum training epochs (default 200 LM / 1000 SR)");
  cmd->add_option("--b", o.b, "Convergence threshold on the relative error")->capture_default_str();
  cmd->add_option("--e0", o.e0, "Reference ground energy (skips the ED oracle)");
}

ExperimentConfig make_config(const RunOptions& o, const CLI::App* cmd) {
  ExperimentConfig cfg;
  cfg.model.kind = parse_model(o.model);
  if (cfg.model.kind == ModelSpec::Kind::PauliFile) {
    if (o.h_file.empty()) throw CLI::ValidationError("--file", "pauli-file model needs --file");
    cfg.model.path = o.h_file;
  }
  if (!std::isnan(o.coupling)) {
    cfg.model.coupling = o.coupling;
  } else if (cfg.model.kind == ModelSpec::Kind::Tfi) {
    cfg.model.coupling = 1.0;
  } else {
    cfg.model.coupling = 0.0;
  }

  cfg.n_sites = o.n_sites;
  cfg.alpha = o.alpha;
  cfg.symmetric = !o.dense;
  cfg.visible_bias = !o.no_visible_bias;
  cfg.init_scale = o.init_scale;
  cfg.optimizer = optimizer_from_string(o.optimizer);
  cfg.threshold_b = o.b;
  if (!std::isnan(o.e0)) cfg.e0 = o.e0;

  const bool chem = cfg.model.kind == ModelSpec::Kind::PauliFile;
  const bool j1j2 = cfg.model.kind == ModelSpec::Kind::J1J2;

  cfg.model.marshall = o.marshall_on || (j1j2 && !o.marshall_off);
  if (j1j2 && cfg.model.marshall && cfg.n_sites % 2 != 0) cfg.model.marshall = false;

  cfg.sampler.n_samples = o.n_samples >= 0 ? o.n_samples : (chem ? 10000 : 1000);
  cfg.sampler.burn_in_sweeps = o.burn_in;
  cfg.sampler.downsample_interval =
      o.interval >= 0 ? o.interval : (chem ? 10L * cfg.n_sites : 0L);
  cfg.sampler.n_chains = o.chains;
  if (!o.kernel.empty()) {
    cfg.sampler.kernel = parse_kernel(o.kernel);
  } else {
    cfg.sampler.kernel = j1j2   ? Kernel::Exchange
                         : chem ? Kernel::Hamiltonian
                                : Kernel::Local;
  }
  if (!o.sector.empty()) {
    cfg.sampler.sector = parse_sector(o.sector);
  } else if (cfg.sampler.kernel == Kernel::Exchange) {
    cfg.sampler.sector = SymmetrySector::fixed_magnetization(cfg.n_sites % 2);
  }

  cfg.sr.eta = o.eta;
  cfg.sr.a_diag = o.a_diag;
  cfg.lm.a_diag = o.a_diag;
  cfg.lm.kappa0 = o.kappa0 > 0 ? o.kappa0 : (chem ? 0.1 : 0.5);
  cfg.max_epochs = o.epochs >= 0 ? o.epochs
                                 : (cfg.optimizer == OptimizerKind::Lm ? 200 : 1000);
  (void)cmd;
  return cfg;
}

void apply_config_file(RunOptions& o) {
  if (o.config_file.empty()) return;
  std::ifstream in(o.config_file);
  if (!in) throw std::runtime_error("cannot open config file: " + o.config_file);
  nlohmann::json j;
  in >> j;
  // File values become the new defaults; explicit flags already live in `o`
  // and have been parsed after this runs, so the CLI applies them on top.
  if (j.contains("model")) o.model = j["model"].get<std::string>();
  if (j.contains("pauli_file")) o.h_file = j["pauli_file"].get<std::string>();
  if (j.contains("coupling")) o.coupling = j["coupling"].get<double>();
  if (j.contains("n_sites")) o.n_sites = j["n_sites"].get<int>();
  if (j.contains("alpha")) o.alpha = j["alpha"].get<int>();
  if (j.contains("symmetric")) o.dense = !j["symmetric"].get<bool>();
  if (j.contains("visible_bias")) o.no_visible_bias = !j["visible_bias"].get<bool>();
  if (j.contains("init_scale")) o.init_scale = j["init_scale"].get<double>();
  if (j.contains("optimizer")) o.optimizer = j["optimizer"].get<std::string>();
  if (j.contains("n_samples")) o.n_samples = j["n_samples"].get<long>();
  if (j.contains("burn_in_sweeps")) o.burn_in = j["burn_in_sweeps"].get<int>();
  if (j.contains("downsample_interval")) o.interval = j["downsample_interval"].get<long>();
  if (j.contains("n_chains")) o.chains = j["n_chains"].get<int>();
  if (j.contains("kernel")) o.kernel = j["kernel"].get<std::string>();
  if (j.contains("sector")) o.sector = j["sector"].get<std::string>();
  if (j.contains("marshall")) {
    o.marshall_on = j["marshall"].get<bool>();
    o.marshall_off = !o.marshall_on;
  }
  if (j.contains("eta")) o.eta = j["eta"].get<double>();
  if (j.contains("a_diag")) o.a_diag = j["a_diag"].get<double>();
  if (j.contains("kappa0")) o.kappa0 = j["kappa0"].get<double>();
  if (j.contains("max_epochs")) o.epochs = j["max_epochs"].get<int>();
  if (j.contains("threshold_b")) o.b = j["threshold_b"].get<double>();
}

std::string run_tag(const ExperimentConfig& cfg) {
  std::ostringstream tag;
  tag << cfg.model.name() << "_" << to_string(cfg.optimizer) << "_N" << cfg.n_sites
      << "_c" << cfg.model.coupling << "_s" << cfg.seed;
  return tag.str();
}

int run_one(const ExperimentConfig& cfg, const fs::path& out_dir, bool quiet) {
  fs::create_directories(out_dir);
  const RunRecord record = train(cfg);
  const std::string tag = run_tag(cfg);
  write_run_csv(record, cfg, out_dir / (tag + ".csv"));
  write_summary_json(record, cfg, out_dir / (tag + ".json"));
  if (record.failed) {
    std::cerr << tag << " FAILED: " << record.fail_reason << "\n";
    return 1;
  }
  if (!quiet) {
    std::cout << tag << ": ";
    if (record.n_conv) {
      std::cout << "converged at epoch " << *record.n_conv;
    } else {
      std::cout << "not converged in " << record.rows.size() << " epochs";
    }
    if (!record.rows.empty()) {
      std::cout << ", E = " << record.rows.back().energy;
      if (record.e0) std::cout << ", eps_rel = " << record.rows.back().eps_rel;
    }
    std::cout << ", T = " << record.total_time() << " s\n";
  }
  return 0;
}

// ---- report aggregation --------------------------------------------------

struct CellKey {
  std::string model;
  int n_sites;
  double coupling;
  bool operator<(const CellKey& other) const {
    return std::tie(model, n_sites, coupling) <
           std::tie(other.model, other.n_sites, other.coupling);
  }
};

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_report(const fs::path& in_dir, double b_override, const fs::path& out_dir) {
  std::vector<RunSummary> runs;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.path().extension() == ".json") {
      try {
        runs.push_back(load_summary_json(entry.path()));
      } catch (const std::exception& e) {
        std::cerr << "skipping " << entry.path() << ": " << e.what() << "\n";
      }
    }
  }
  if (runs.empty()) {
    std::cerr << "no run summaries found in " << in_dir << "\n";
    return 1;
  }

  std::map<CellKey, std::map<std::string, std::vector<const RunSummary*>>> cells;
  for (const auto& r : runs) {
    cells[{r.model, r.n_sites, r.coupling}][r.optimizer].push_back(&r);
  }

  auto converged_at = [&](const RunSummary& r, double b) -> std::optional<int> {
    if (!r.e0) return std::nullopt;
    for (std::size_t i = 0; i < r.energies.size(); ++i) {
      if (relative_error(r.energies[i], *r.e0) <= b) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
  };

  std::ostringstream rel_csv, phase_csv, trans_csv;
  rel_csv << "model,N,coupling,optimizer,b,n_runs,n_converged,c_r,two_sigma\n";
  phase_csv << "model,N,coupling,delta_t_u,delta_t,complete\n";
  trans_csv << "model,N,nconv_lm,nconv_sr,t_u_lm,t_u_sr,ts_trans_mean,ts_trans_median\n";

  struct TransAccum {
    std::vector<double> nconv_lm, nconv_sr, tu_lm, tu_sr;
  };
  std::map<std::pair<std::string, int>, TransAccum> trans;

  for (const auto& [key, by_opt] : cells) {
    for (const auto& [opt, cell_runs] : by_opt) {
      const double b = b_override > 0 ? b_override : cell_runs.front()->threshold_b;
      int n_conv = 0;
      std::vector<double> epochs, tu_means;
      for (const auto* r : cell_runs) {
        if (auto e = converged_at(*r, b)) {
          ++n_conv;
          epochs.push_back(static_cast<double>(*e));
          tu_means.push_back(r->t_u_mean);
        }
      }
      const double ratio = static_cast<double>(n_conv) / static_cast<double>(cell_runs.size());
      const double two_sigma =
          2.0 * std::sqrt(ratio * (1 - ratio) / static_cast<double>(cell_runs.size()));
      rel_csv << key.model << "," << key.n_sites << "," << key.coupling << "," << opt << ","
              << b << "," << cell_runs.size() << "," << n_conv << "," << ratio << ","
              << two_sigma << "\n";
      auto& t = trans[{key.model, key.n_sites}];
      if (opt == "lm") {
        t.nconv_lm.insert(t.nconv_lm.end(), epochs.begin(), epochs.end());
        t.tu_lm.insert(t.tu_lm.end(), tu_means.begin(), tu_means.end());
      } else {
        t.nconv_sr.insert(t.nconv_sr.end(), epochs.begin(), epochs.end());
        t.tu_sr.insert(t.tu_sr.end(), tu_means.begin(), tu_means.end());
      }
    }
    const bool complete = by_opt.count("sr") && by_opt.count("lm");
    double dtu = 0, dt = 0;
    if (complete) {
      std::vector<double> tu_sr, tu_lm, t_sr, t_lm;
      for (const auto* r : by_opt.at("sr")) {
        tu_sr.push_back(r->total_update_time);
        t_sr.push_back(r->total_time);
      }
      for (const auto* r : by_opt.at("lm")) {
        tu_lm.push_back(r->total_update_time);
        t_lm.push_back(r->total_time);
      }
      dtu = mean(tu_sr) - mean(tu_lm);
      dt = mean(t_sr) - mean(t_lm);
    }
    phase_csv << key.model << "," << key.n_sites << "," << key.coupling << "," << dtu << ","
              << dt << "," << (complete ? 1 : 0) << "\n";
  }

  // Epoch counts averaged over the Hamiltonian parameters of each system size
  // give one transition line per size.
  for (const auto& [mk, t] : trans) {
    if (t.nconv_lm.empty() || t.nconv_sr.empty()) continue;
    const double nl_mean = mean(t.nconv_lm), ns_mean = mean(t.nconv_sr);
    const double nl_med = median(t.nconv_lm), ns_med = median(t.nconv_sr);
    if (nl_mean == ns_mean) continue;
    const double ts_mean = transition_time(nl_mean, mean(t.tu_lm), ns_mean, mean(t.tu_sr));
    const double ts_median = nl_med == ns_med
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : transition_time(nl_med, median(t.tu_lm), ns_med, median(t.tu_sr));
    trans_csv << mk.first << "," << mk.second << "," << nl_mean << "," << ns_mean << ","
              << mean(t.tu_lm) << "," << mean(t.tu_sr) << "," << ts_mean << "," << ts_median
              << "\n";
  }

  std::cout << "# reliability\n" << rel_csv.str() << "\n# phase diagram\n" << phase_csv.str()
            << "\n# transition sampling time\n" << trans_csv.str();
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream(out_dir / "reliability.csv") << rel_csv.str();
    std::ofstream(out_dir / "phase.csv") << phase_csv.str();
    std::ofstream(out_dir / "transition.csv") << trans_csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational Monte Carlo for RBM quantum states: SR and LM optimizers"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1);

  // train ------------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "Run one training experiment");
  RunOptions train_opts;
  std::uint64_t train_seed = 1;
  std::string train_out = default_out_dir().string();
  add_run_options(train_cmd, train_opts);
  train_cmd->add_option("--seed", train_seed, "RNG seed")->capture_default_str();
  train_cmd->add_option("--out", train_out, "Output directory")->capture_default_str();

  // sweep ------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of runs over sizes, couplings and seeds");
  RunOptions sweep_opts;
  std::vector<int> sweep_sizes{10};
  std::vector<double> sweep_couplings;
  std::vector<std::uint64_t> sweep_seeds{1, 2, 3, 4, 5};
  std::string sweep_optimizers = "both";
  std::string sweep_out = default_out_dir().string();
  int sweep_jobs = default_jobs();
  add_run_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--sizes", sweep_sizes, "Site counts")->delimiter(',');
  sweep_cmd->add_option("--couplings", sweep_couplings, "Coupling values (h or j2)")->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep_seeds, "Seeds")->delimiter(',');
  sweep_cmd->add_option("--optimizers", sweep_optimizers, "sr, lm or both")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "Output directory")->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Concurrent runs")->capture_default_str();

  // oracle -----------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact ground-state energy fixtures");
  oracle_cmd->set_help_flag("--help", "Print help");
  std::string oracle_model = "tfi";
  std::string oracle_file;
  int oracle_n = 10;
  std::vector<double> oracle_couplings{1.0};
  std::string oracle_sector = "unrestricted";
  std::string oracle_out;
  bool oracle_marshall = false;
  oracle_cmd->add_option("--model", oracle_model, "tfi, j1j2 or pauli-file")->capture_default_str();
  oracle_cmd->add_option("--file", oracle_file, "Hamiltonian text file");
  oracle_cmd->add_option("--N", oracle_n, "Number of sites")->capture_default_str();
  oracle_cmd->add_option("--couplings,--h,--j2", oracle_couplings, "Coupling values")->delimiter(',');
  oracle_cmd->add_option("--sector", oracle_sector, "Symmetry sector")->capture_default_str();
  oracle_cmd->add_flag("--marshall", oracle_marshall, "Apply the Marshall rotation");
  oracle_cmd->add_option("--out", oracle_out, "Append fixture lines to this file");

  // report -----------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "Aggregate run outputs into tables");
  std::string report_in = default_out_dir().string();
  std::string report_out;
  double report_b = -1;
  report_cmd->add_option("--in", report_in, "Directory of run summaries")->capture_default_str();
  report_cmd->add_option("--b", report_b, "Convergence threshold override");
  report_cmd->add_option("--out", report_out, "Directory for the aggregated CSV files");

  // validate ---------------------------------------------------------------
  auto* validate_cmd = app.add_subcommand("validate", "Exact-mode property suite");
  std::uint64_t validate_seed = 7;
  validate_cmd->add_option("--seed", validate_seed, "RNG seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      apply_config_file(train_opts);
      ExperimentConfig cfg = make_config(train_opts, train_cmd);
      cfg.seed = train_seed;
      return run_one(cfg, train_out, false);
    }

    if (sweep_cmd->parsed()) {
      apply_config_file(sweep_opts);
      if (sweep_couplings.empty()) {
        sweep_couplings = {std::isnan(sweep_opts.coupling) ? 1.0 : sweep_opts.coupling};
      }
      std::vector<std::string> opts;
      if (sweep_optimizers == "both") {
        opts = {"sr", "lm"};
      } else {
        opts = {sweep_optimizers};
      }
      std::vector<ExperimentConfig> grid;
      for (int n : sweep_sizes) {
        for (double c : sweep_couplings) {
          for (const auto& opt : opts) {
            for (std::uint64_t seed : sweep_seeds) {
              RunOptions cell = sweep_opts;
              cell.n_sites = n;
              cell.coupling = c;
              cell.optimizer = opt;
              ExperimentConfig cfg = make_config(cell, sweep_cmd);
              cfg.seed = seed;
              grid.push_back(std::move(cfg));
            }
          }
        }
      }
      std::cout << "sweep: " << grid.size() << " runs -> " << sweep_out << "\n";
      int failures = 0;
      const int jobs = std::max(1, sweep_jobs);
      for (std::size_t base = 0; base < grid.size(); base += static_cast<std::size_t>(jobs)) {
        std::vector<std::future<int>> batch;
        for (std::size_t k = base; k < std::min(grid.size(), base + static_cast<std::size_t>(jobs)); ++k) {
          batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                     [&grid, k, &sweep_out]() {
                                       return run_one(grid[k], sweep_out, false);
                                     }));
        }
        for (auto& f : batch) failures += f.get();
      }
      return failures == 0 ? 0 : 1;
    }

    if (oracle_cmd->parsed()) {
      ModelSpec spec;
      spec.kind = parse_model(oracle_model);
      spec.marshall = oracle_marshall;
      if (spec.kind == ModelSpec::Kind::PauliFile) spec.path = oracle_file;
      const SymmetrySector sector = parse_sector(oracle_sector);
      std::ostringstream lines;
      for (double c : oracle_couplings) {
        spec.coupling = c;
        const PauliHamiltonian h = spec.build(oracle_n);
        const ExactSolution sol = exact_ground_state(h, sector);
        lines.precision(15);
        lines << spec.name() << "," << c << "," << oracle_n << "," << sector.to_string()
              << "," << sol.ground_energy << "," << sol.degeneracy << "\n";
      }
      std::cout << "model,coupling,N,sector,E0,degeneracy\n" << lines.str();
      if (!oracle_out.empty()) {
        std::ofstream out(oracle_out, std::ios::app);
        out << lines.str();
      }
      return 0;
    }

    if (report_cmd->parsed()) {
      return cmd_report(report_in, report_b, report_out);
    }

    if (validate_cmd->parsed()) {
      const int failures = run_validation(std::cout, validate_seed);
      std::cout << (failures == 0 ? "all checks passed\n"
                                  : std::to_string(failures) + " check(s) failed\n");
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
