#include "aic/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "aic/errors.hpp"

namespace aic {
namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(v[i]);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an unsigned integer: '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

Vec parse_vec(const std::string& key, const std::string& value) {
  std::vector<double> vals;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(parse_double(key, item));
  Vec v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "benchmark") cfg.benchmark = value;
  else if (key == "preset") cfg.preset = value;
  else if (key == "dt") cfg.dt = parse_double(key, value);
  else if (key == "horizon") cfg.horizon = parse_double(key, value);
  else if (key == "gamma_bar_s") cfg.gamma_bar_s = parse_double(key, value);
  else if (key == "gamma_bar_c") cfg.gamma_bar_c = parse_double(key, value);
  else if (key == "belief_gamma_c") cfg.belief_gamma_c = parse_double(key, value);
  else if (key == "h_i") cfg.h_i = parse_int(key, value);
  else if (key == "h_a") cfg.h_a = parse_int(key, value);
  else if (key == "eta_i1") cfg.eta_i1 = parse_double(key, value);
  else if (key == "eta_i2") cfg.eta_i2 = parse_double(key, value);
  else if (key == "eta_c") cfg.eta_c = parse_double(key, value);
  else if (key == "eta_a1") cfg.eta_a1 = parse_double(key, value);
  else if (key == "eta_a2") cfg.eta_a2 = parse_double(key, value);
  else if (key == "rho") cfg.rho = parse_double(key, value);
  else if (key == "q_diag") cfg.q_diag = parse_vec(key, value);
  else if (key == "r_diag") cfg.r_diag = parse_vec(key, value);
  else if (key == "ac_diag") cfg.ac_diag = parse_vec(key, value);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "x0_offset") cfg.x0_offset = parse_vec(key, value);
  else if (key == "settle_band") cfg.settle_band = parse_double(key, value);
  else if (key == "allow_unstable") cfg.allow_unstable = parse_bool(key, value);
  else if (key == "command_clamp") cfg.command_clamp = parse_double(key, value);
  else if (key == "uncontrolled") cfg.uncontrolled = parse_bool(key, value);
  else if (key == "vsm_omega_nom") cfg.vsm.omega_nom = parse_double(key, value);
  else if (key == "vsm_d_p") cfg.vsm.d_p = parse_double(key, value);
  else if (key == "vsm_h") cfg.vsm.h = parse_double(key, value);
  else if (key == "vsm_p_max") cfg.vsm.p_max = parse_double(key, value);
  else if (key == "vsm_p_imbalance") cfg.vsm.p_imbalance = parse_double(key, value);
  else if (key == "vsm_delta_ref") cfg.vsm.delta_ref = parse_double(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    pairs.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return pairs;
}

RunConfig simo_faithful() {
  RunConfig c;
  c.benchmark = "simo";
  c.preset = "simo-faithful";
  c.dt = 1e-3;
  c.horizon = 20.0;
  c.gamma_bar_s = 0.8;
  c.gamma_bar_c = 0.7;
  c.h_i = 8;
  c.h_a = 8;
  c.eta_i1 = 1e-3;
  c.eta_i2 = 1e-3;
  c.eta_c = 1e-9;
  c.eta_a1 = 1e2;
  c.eta_a2 = 1e2;
  c.rho = 1e-3;
  c.q_diag = Vec{{0.5, 1.0}};
  c.r_diag = Vec{{5e-4}};
  c.ac_diag = Vec{{-1.0, -1.0}};
  c.x0_offset = Vec{{0.5, -0.5}};
  return c;
}

RunConfig simo_tuned() {
  RunConfig c = simo_faithful();
  c.preset = "simo-tuned";
  c.eta_i1 = 5e3;
  c.eta_i2 = 5e3;
  c.eta_c = 1.0;
  c.eta_a1 = 2e4;
  c.eta_a2 = 2e4;
  return c;
}

RunConfig mimo_faithful() {
  RunConfig c = simo_faithful();
  c.benchmark = "mimo";
  c.preset = "mimo-faithful";
  c.horizon = 30.0;
  c.h_i = 2;
  c.h_a = 64;
  c.eta_i1 = 1e-3;
  c.eta_i2 = 1e-3;
  c.eta_c = 1e-3;
  c.eta_a1 = 10.0;
  c.eta_a2 = 10.0;
  c.r_diag = Vec{{5e-3, 5e-3}};
  return c;
}

RunConfig mimo_tuned() {
  RunConfig c = mimo_faithful();
  c.preset = "mimo-tuned";
  c.h_i = 8;
  c.eta_i1 = 5e3;
  c.eta_i2 = 5e3;
  c.eta_c = 1.0;
  c.eta_a1 = 2e3;
  c.eta_a2 = 2e3;
  return c;
}

RunConfig vsm_preset() {
  RunConfig c;
  c.benchmark = "vsm";
  c.preset = "vsm";
  c.dt = 1e-4;
  c.horizon = 10.0;
  c.gamma_bar_s = 0.8;
  c.gamma_bar_c = 0.7;
  c.h_i = 8;
  c.h_a = 8;
  c.eta_i1 = 5e4;
  c.eta_i2 = 5e4;
  c.eta_c = 1.0;
  c.eta_a1 = 2e5;
  c.eta_a2 = 2e5;
  c.rho = 1e-3;
  c.q_diag = Vec{{0.5, 1.0}};
  c.r_diag = Vec{{5e-4}};
  c.ac_diag = Vec{{-1.0, -1.0}};
  c.x0_offset = Vec{{-VsmParams{}.delta_ref, 0.0}};  // start at delta = 0, nominal frequency
  return c;
}

}  // namespace

void RunConfig::validate() const {
  if (benchmark.empty()) throw ConfigError("benchmark required");
  if (benchmark != "simo" && benchmark != "mimo" && benchmark != "vsm")
    throw ConfigError("benchmark: unknown name '" + benchmark + "'");
  const int n_x = 2;
  const int n_u = benchmark == "mimo" ? 2 : 1;
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (!(horizon > 0.0)) throw ConfigError("horizon: must be positive");
  if (!(gamma_bar_s >= 0.0 && gamma_bar_s <= 1.0))
    throw ConfigError("gamma_bar_s: must lie in [0, 1]");
  if (!(gamma_bar_c >= 0.0 && gamma_bar_c <= 1.0))
    throw ConfigError("gamma_bar_c: must lie in [0, 1]");
  if (belief_gamma_c > 1.0) throw ConfigError("belief_gamma_c: must lie in [0, 1] or be negative");
  if (h_i < 1) throw ConfigError("h_i: must be >= 1");
  if (h_a < 1) throw ConfigError("h_a: must be >= 1");
  if (!allow_unstable && !(eta_c > 0.0 && eta_c < 2.0))
    throw ConfigError("eta_c: must lie in (0, 2) per the critic stability bound; "
                      "set allow_unstable to override");
  if (rho < 0.0) throw ConfigError("rho: must be >= 0");
  if (q_diag.size() != n_x) throw ConfigError("q_diag: expected " + std::to_string(n_x) + " entries");
  if (r_diag.size() != n_u) throw ConfigError("r_diag: expected " + std::to_string(n_u) + " entries");
  if (ac_diag.size() != n_x) throw ConfigError("ac_diag: expected " + std::to_string(n_x) + " entries");
  for (Eigen::Index i = 0; i < q_diag.size(); ++i)
    if (!(q_diag[i] > 0.0)) throw ConfigError("q_diag: entries must be positive");
  for (Eigen::Index i = 0; i < r_diag.size(); ++i)
    if (!(r_diag[i] > 0.0)) throw ConfigError("r_diag: entries must be positive");
  for (Eigen::Index i = 0; i < ac_diag.size(); ++i)
    if (!(ac_diag[i] < 0.0)) throw ConfigError("ac_diag: entries must be negative (Hurwitz)");
  if (x0_offset.size() != n_x)
    throw ConfigError("x0_offset: expected " + std::to_string(n_x) + " entries");
  if (!(settle_band > 0.0 && settle_band < 1.0))
    throw ConfigError("settle_band: must lie in (0, 1)");
  if (command_clamp < 0.0) throw ConfigError("command_clamp: must be >= 0 (0 disables)");
  if (benchmark == "vsm") {
    if (!(vsm.h > 0.0)) throw ConfigError("vsm_h: must be positive");
    if (!(vsm.p_max > 0.0)) throw ConfigError("vsm_p_max: must be positive");
    if (vsm.d_p < 0.0) throw ConfigError("vsm_d_p: must be >= 0");
  }
}

std::string RunConfig::to_ini() const {
  std::string out;
  const auto add = [&out](const std::string& k, const std::string& v) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  };
  add("benchmark", benchmark);
  add("preset", preset);
  add("dt", fmt_double(dt));
  add("horizon", fmt_double(horizon));
  add("gamma_bar_s", fmt_double(gamma_bar_s));
  add("gamma_bar_c", fmt_double(gamma_bar_c));
  add("belief_gamma_c", fmt_double(belief_gamma_c));
  add("h_i", std::to_string(h_i));
  add("h_a", std::to_string(h_a));
  add("eta_i1", fmt_double(eta_i1));
  add("eta_i2", fmt_double(eta_i2));
  add("eta_c", fmt_double(eta_c));
  add("eta_a1", fmt_double(eta_a1));
  add("eta_a2", fmt_double(eta_a2));
  add("rho", fmt_double(rho));
  add("q_diag", fmt_vec(q_diag));
  add("r_diag", fmt_vec(r_diag));
  add("ac_diag", fmt_vec(ac_diag));
  add("seed", std::to_string(seed));
  add("x0_offset", fmt_vec(x0_offset));
  add("settle_band", fmt_double(settle_band));
  add("allow_unstable", allow_unstable ? "true" : "false");
  add("command_clamp", fmt_double(command_clamp));
  add("uncontrolled", uncontrolled ? "true" : "false");
  if (benchmark == "vsm") {
    add("vsm_omega_nom", fmt_double(vsm.omega_nom));
    add("vsm_d_p", fmt_double(vsm.d_p));
    add("vsm_h", fmt_double(vsm.h));
    add("vsm_p_max", fmt_double(vsm.p_max));
    add("vsm_p_imbalance", fmt_double(vsm.p_imbalance));
    add("vsm_delta_ref", fmt_double(vsm.delta_ref));
  }
  return out;
}

std::string RunConfig::hash() const {
  const std::string ini = to_ini();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : ini) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

RunConfig preset_config(const std::string& name) {
  if (name == "simo-faithful") return simo_faithful();
  if (name == "simo-tuned") return simo_tuned();
  if (name == "mimo-faithful") return mimo_faithful();
  if (name == "mimo-tuned") return mimo_tuned();
  if (name == "vsm") return vsm_preset();
  throw ConfigError("preset: unknown name '" + name + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"simo-faithful", "simo-tuned", "mimo-faithful",
                                                 "mimo-tuned", "vsm"};
  return names;
}

void apply_ini(RunConfig& cfg, const std::string& text) {
  for (const auto& [key, value] : parse_pairs(text)) set_key(cfg, key, value);
}

RunConfig parse_ini(const std::string& text) {
  const auto pairs = parse_pairs(text);
  RunConfig cfg;
  std::string preset, benchmark;
  for (const auto& [key, value] : pairs) {
    if (key == "preset") preset = value;
    if (key == "benchmark") benchmark = value;
  }
  if (!preset.empty()) {
    cfg = preset_config(preset);
  } else if (!benchmark.empty()) {
    if (benchmark == "simo") cfg = simo_faithful();
    else if (benchmark == "mimo") cfg = mimo_faithful();
    else if (benchmark == "vsm") cfg = vsm_preset();
    else throw ConfigError("benchmark: unknown name '" + benchmark + "'");
  }
  for (const auto& [key, value] : pairs) set_key(cfg, key, value);
  return cfg;
}

const std::vector<std::pair<double, double>>& default_scenarios() {
  static const std::vector<std::pair<double, double>> scenarios = {
      {1.0, 1.0}, {1.0, 0.8}, {0.8, 1.0}, {0.9, 0.9}, {0.8, 0.7}};
  return scenarios;
}

}  // namespace aic
