#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aic/dynamics.hpp"

namespace aic {

// Full description of one experiment. Serializes to line-oriented
// `key = value` text; parse(to_ini()) is the identity.
struct RunConfig {
  std::string benchmark;  // simo | mimo | vsm
  std::string preset;     // provenance tag, e.g. simo-tuned

  double dt = 1e-3;
  double horizon = 20.0;       // seconds
  double gamma_bar_s = 1.0;    // sensor-side pass probability
  double gamma_bar_c = 1.0;    // actuator-side pass probability
  double belief_gamma_c = -1;  // controller belief; negative = match gamma_bar_c

  int h_i = 8;  // identifier hidden width
  int h_a = 8;  // actor hidden width
  double eta_i1 = 1e-3;
  double eta_i2 = 1e-3;
  double eta_c = 1e-9;
  double eta_a1 = 1e2;
  double eta_a2 = 1e2;
  double rho = 1e-3;

  Vec q_diag;   // n_x
  Vec r_diag;   // n_u
  Vec ac_diag;  // n_x, all negative

  std::uint64_t seed = 0;
  Vec x0_offset;  // x(0) = x_d(0) + offset
  double settle_band = 0.05;
  bool allow_unstable = false;
  double command_clamp = 0.0;  // infinity-norm ceiling on u_c; 0 disables
  bool uncontrolled = false;   // force the applied command chain to zero

  VsmParams vsm;  // used when benchmark == vsm

  double effective_belief_gamma_c() const {
    return belief_gamma_c < 0.0 ? gamma_bar_c : belief_gamma_c;
  }

  // Throws ConfigError naming the offending key.
  void validate() const;
  std::string to_ini() const;
  // FNV-1a of the canonical INI text, 16 hex digits.
  std::string hash() const;
};

// simo-faithful | simo-tuned | mimo-faithful | mimo-tuned | vsm.
RunConfig preset_config(const std::string& name);
const std::vector<std::string>& preset_names();

// Parses INI text. A `preset` key selects the base config; otherwise the
// benchmark's default preset seeds the remaining fields. Unknown keys throw.
RunConfig parse_ini(const std::string& text);
// Overlays INI keys onto an existing config.
void apply_ini(RunConfig& cfg, const std::string& text);

// The five (sensor, actuator) pass-probability pairs of the evaluation table.
const std::vector<std::pair<double, double>>& default_scenarios();

}  // namespace aic
