// Command-line harness: closed-loop runs, scenario sweeps, gradient checks,
// value-surface export. Exit codes: 0 ok, 1 config error, 2 divergence,
// 3 gradient-check failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "aic/config.hpp"
#include "aic/controller.hpp"
#include "aic/csv.hpp"
#include "aic/errors.hpp"
#include "aic/gradcheck.hpp"
#include "aic/metrics.hpp"
#include "aic/sweep.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw aic::ConfigError("config: cannot open file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool ini_has_key(const std::string& text, const std::string& key) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    k.erase(0, k.find_first_not_of(" \t"));
    k.erase(k.find_last_not_of(" \t") + 1);
    if (k == key) return true;
  }
  return false;
}

// Shared config options; flags override file values override preset defaults.
struct ConfigFlags {
  std::string preset, config_file, benchmark;
  double dt = 0, horizon = 0, gamma_s = 0, gamma_c = 0, belief_gamma_c = 0;
  double eta_i1 = 0, eta_i2 = 0, eta_c = 0, eta_a1 = 0, eta_a2 = 0, rho = 0;
  double settle_band = 0, command_clamp = 0;
  int h_i = 0, h_a = 0;
  std::uint64_t seed = 0;
  std::string q_diag, r_diag, ac_diag, x0_offset;
  bool allow_unstable = false, uncontrolled = false;

  CLI::App* cmd = nullptr;

  void add_to(CLI::App* app) {
    cmd = app;
    app->add_option("--preset", preset, "Preset name (simo-faithful, simo-tuned, mimo-faithful, "
                                        "mimo-tuned, vsm)");
    app->add_option("--config", config_file, "INI config file (key = value lines)");
    app->add_option("--benchmark", benchmark, "simo | mimo | vsm");
    app->add_option("--dt", dt, "Integration step [s]");
    app->add_option("--horizon", horizon, "Simulation horizon [s]");
    app->add_option("--gamma-s", gamma_s, "Sensor-side pass probability");
    app->add_option("--gamma-c", gamma_c, "Actuator-side pass probability");
    app->add_option("--belief-gamma-c", belief_gamma_c,
                    "Controller belief of gamma_c (negative = match channel)");
    app->add_option("--h-i", h_i, "Identifier hidden width");
    app->add_option("--h-a", h_a, "Actor hidden width");
    app->add_option("--eta-i1", eta_i1, "Identifier output-layer rate");
    app->add_option("--eta-i2", eta_i2, "Identifier hidden-layer rate");
    app->add_option("--eta-c", eta_c, "Critic rate");
    app->add_option("--eta-a1", eta_a1, "Actor output-layer rate");
    app->add_option("--eta-a2", eta_a2, "Actor hidden-layer rate");
    app->add_option("--rho", rho, "Weight-decay regularization gain");
    app->add_option("--q-diag", q_diag, "Tracking weight diagonal, comma separated");
    app->add_option("--r-diag", r_diag, "Effort weight diagonal, comma separated");
    app->add_option("--ac-diag", ac_diag, "Hurwitz diagonal (negative entries)");
    app->add_option("--seed", seed, "Master seed (env AIC_SEED is the fallback)");
    app->add_option("--x0-offset", x0_offset, "Initial state offset from x_d(0)");
    app->add_option("--settle-band", settle_band, "Settle band fraction");
    app->add_option("--command-clamp", command_clamp, "Command sup-norm ceiling (0 = off)");
    app->add_flag("--allow-unstable", allow_unstable, "Accept eta_c outside (0, 2)");
    app->add_flag("--uncontrolled", uncontrolled, "Force the command to zero (baseline)");
  }

  bool given(const std::string& name) const { return cmd->count(name) > 0; }

  aic::RunConfig build(const std::string& fallback_preset = "") const {
    aic::RunConfig cfg;
    bool have_base = false;
    bool seed_set = false;
    if (given("--preset")) {
      cfg = aic::preset_config(preset);
      have_base = true;
    } else if (!fallback_preset.empty()) {
      cfg = aic::preset_config(fallback_preset);
      have_base = true;
    }
    if (given("--config")) {
      const std::string text = slurp(config_file);
      if (have_base) {
        aic::apply_ini(cfg, text);
      } else {
        cfg = aic::parse_ini(text);
        have_base = true;
      }
      seed_set = seed_set || ini_has_key(text, "seed");
    }

    std::string overrides;
    const auto add = [&](const char* flag, const char* key, const std::string& value) {
      if (given(flag)) overrides += std::string(key) + " = " + value + "\n";
    };
    add("--benchmark", "benchmark", benchmark);
    add("--dt", "dt", fmt_full(dt));
    add("--horizon", "horizon", fmt_full(horizon));
    add("--gamma-s", "gamma_bar_s", fmt_full(gamma_s));
    add("--gamma-c", "gamma_bar_c", fmt_full(gamma_c));
    add("--belief-gamma-c", "belief_gamma_c", fmt_full(belief_gamma_c));
    add("--h-i", "h_i", std::to_string(h_i));
    add("--h-a", "h_a", std::to_string(h_a));
    add("--eta-i1", "eta_i1", fmt_full(eta_i1));
    add("--eta-i2", "eta_i2", fmt_full(eta_i2));
    add("--eta-c", "eta_c", fmt_full(eta_c));
    add("--eta-a1", "eta_a1", fmt_full(eta_a1));
    add("--eta-a2", "eta_a2", fmt_full(eta_a2));
    add("--rho", "rho", fmt_full(rho));
    add("--q-diag", "q_diag", q_diag);
    add("--r-diag", "r_diag", r_diag);
    add("--ac-diag", "ac_diag", ac_diag);
    add("--x0-offset", "x0_offset", x0_offset);
    add("--settle-band", "settle_band", fmt_full(settle_band));
    add("--command-clamp", "command_clamp", fmt_full(command_clamp));
    if (allow_unstable) overrides += "allow_unstable = true\n";
    if (uncontrolled) overrides += "uncontrolled = true\n";
    add("--seed", "seed", std::to_string(seed));
    seed_set = seed_set || given("--seed");

    if (have_base) {
      aic::apply_ini(cfg, overrides);
    } else {
      cfg = aic::parse_ini(overrides);
    }
    if (!seed_set) {
      if (const char* env = std::getenv("AIC_SEED")) {
        try {
          cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw aic::ConfigError("AIC_SEED: not an unsigned integer: '" + std::string(env) + "'");
        }
      }
    }
    cfg.validate();
    return cfg;
  }
};

// Writes to the path, or to stdout for "-".
void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw aic::ConfigError("out: cannot open '" + path + "' for writing");
  out << content;
}

int cmd_run(const ConfigFlags& flags, const std::string& out_path,
            const std::string& fallback_preset = "") {
  const aic::RunConfig cfg = flags.build(fallback_preset);
  const aic::TrajectoryLog log = aic::run_episode(cfg);

  std::ostringstream csv;
  aic::write_trajectory_csv(csv, log);
  write_output(out_path, csv.str());

  std::cerr << "run: benchmark=" << log.benchmark << " seed=" << log.seed
            << " config=" << log.config_hash << " steps=" << log.steps.size() << "\n";
  if (log.diverged) {
    std::cerr << "run: DIVERGED: " << log.divergence_reason << " (partial trajectory kept)\n";
    return 2;
  }
  if (log.steps.size() >= 2) {
    const aic::MetricReport report = aic::compute_report(log, cfg.settle_band);
    std::cerr << "run: OTE nrmse=" << aic::fmt9(report.ote_nrmse)
              << " pcc=" << aic::fmt9(report.ote_pcc)
              << " | PCTE nrmse=" << aic::fmt9(report.pcte_nrmse)
              << " pcc=" << aic::fmt9(report.pcte_pcc) << " | settle=";
    if (report.settle) {
      std::cerr << aic::fmt9(*report.settle) << " s\n";
    } else {
      std::cerr << "(none)\n";
    }
  }
  return 0;
}

int cmd_sweep(const ConfigFlags& flags, int repeats, const std::string& out_path) {
  const aic::RunConfig cfg = flags.build();
  const auto results = aic::run_sweep(cfg, aic::default_scenarios(), repeats);
  write_output(out_path, aic::format_sweep_table(cfg, results, repeats));

  std::size_t total = 0, failed = 0;
  for (const auto& sr : results) {
    total += sr.runs.size();
    failed += static_cast<std::size_t>(sr.diverged_count);
  }
  if (failed > 0) std::cerr << "sweep: " << failed << "/" << total << " runs diverged\n";
  return (failed == total && total > 0) ? 2 : 0;
}

int cmd_gradcheck(std::uint64_t seed, int points) {
  const auto start = std::chrono::steady_clock::now();
  const auto results = aic::run_gradient_checks(seed, points);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%-40s worst rel err %.3e  (threshold %.0e)  %s\n", r.name.c_str(),
                r.worst_rel_err, r.threshold, r.pass() ? "PASS" : "FAIL");
    all_pass = all_pass && r.pass();
  }
  std::printf("gradcheck: %d points per check, %.2f s\n", points, elapsed);
  return all_pass ? 0 : 3;
}

int cmd_surface(const ConfigFlags& flags, const std::string& weights_csv,
                const std::string& out_path, double lo, double hi, int n) {
  aic::BasisSet basis = aic::BasisSet::quadratic(2);
  std::ostringstream csv;
  if (!weights_csv.empty()) {
    std::stringstream ss(weights_csv);
    std::string item;
    std::vector<double> vals;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (static_cast<int>(vals.size()) != basis.size)
      throw aic::ConfigError("weights: expected " + std::to_string(basis.size) + " entries");
    aic::RowVec w(basis.size);
    for (int i = 0; i < basis.size; ++i) w[i] = vals[static_cast<std::size_t>(i)];
    const aic::CriticNet critic(basis, 0.0, w);
    aic::write_value_surface_csv(csv, critic, lo, hi, n);
  } else {
    const aic::RunConfig cfg = flags.build();
    aic::RowVec final_w;
    const aic::TrajectoryLog log = aic::run_episode(
        cfg, [&final_w](const aic::AicController& c, const aic::StepRecord&) {
          final_w = c.critic().weights();
        });
    if (log.diverged) {
      std::cerr << "surface: run diverged: " << log.divergence_reason << "\n";
      return 2;
    }
    if (final_w.size() == 0) throw aic::ConfigError("surface: run produced no steps");
    const aic::CriticNet critic(basis, 0.0, final_w);
    aic::write_value_surface_csv(csv, critic, lo, hi, n);
  }
  write_output(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actor-identifier-critic tracking control under Bernoulli packet dropouts"};
  app.require_subcommand(1);

  ConfigFlags run_flags, sweep_flags, surface_flags, vsm_flags;
  std::string run_out = "-";
  std::string sweep_out = "-";
  std::string surface_out = "-";
  std::string vsm_out = "-";
  std::string surface_weights;
  int repeats = 5;
  std::uint64_t gradcheck_seed = 0;
  int gradcheck_points = 100;
  double grid_min = -1.0, grid_max = 1.0;
  int grid_n = 101;

  CLI::App* run = app.add_subcommand("run", "Run one closed-loop episode, emit trajectory CSV");
  run_flags.add_to(run);
  run->add_option("--out", run_out, "Output CSV path, '-' for stdout");

  CLI::App* sweep = app.add_subcommand("sweep", "Repeated runs over the five dropout scenarios");
  sweep_flags.add_to(sweep);
  sweep->add_option("--repeats", repeats, "Runs per scenario (seeds base..base+repeats-1)");
  sweep->add_option("--out", sweep_out, "Output table path, '-' for stdout");

  CLI::App* grad = app.add_subcommand("gradcheck", "Finite-difference oracles for all gradients");
  grad->add_option("--seed", gradcheck_seed, "Seed for the random check points");
  grad->add_option("--points", gradcheck_points, "Points per check");

  CLI::App* surface = app.add_subcommand("surface", "Critic value over an (e1, e2) grid");
  surface_flags.add_to(surface);
  surface->add_option("--weights", surface_weights, "Use these critic weights directly (w1,w2,w3)");
  surface->add_option("--out", surface_out, "Output CSV path, '-' for stdout");
  surface->add_option("--grid-min", grid_min, "Grid lower bound");
  surface->add_option("--grid-max", grid_max, "Grid upper bound");
  surface->add_option("--grid-n", grid_n, "Grid points per axis");

  CLI::App* vsm = app.add_subcommand("vsm", "Frequency-control case study (vsm preset)");
  vsm_flags.add_to(vsm);
  vsm->add_option("--out", vsm_out, "Output CSV path, '-' for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags, run_out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, repeats, sweep_out);
    if (grad->parsed()) return cmd_gradcheck(gradcheck_seed, gradcheck_points);
    if (surface->parsed())
      return cmd_surface(surface_flags, surface_weights, surface_out, grid_min, grid_max, grid_n);
    if (vsm->parsed()) return cmd_run(vsm_flags, vsm_out, "vsm");
  } catch (const aic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
