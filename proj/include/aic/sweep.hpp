#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aic/config.hpp"
#include "aic/metrics.hpp"

namespace aic {

struct RunOutcome {
  std::uint64_t seed = 0;
  bool diverged = false;
  std::string divergence_reason;
  MetricReport report;  // valid when !diverged
};

struct ScenarioResult {
  double gamma_bar_s = 1.0;
  double gamma_bar_c = 1.0;
  std::vector<RunOutcome> runs;  // ordered by seed

  Aggregate ote_nrmse, ote_pcc, pcte_nrmse, pcte_pcc;
  std::optional<double> settle_mean;  // over runs that settled
  int diverged_count = 0;
};

// repeats runs per scenario with seeds {base_seed, base_seed+1, ...}; runs may
// execute concurrently, results are ordered by (scenario, seed).
std::vector<ScenarioResult> run_sweep(const RunConfig& base,
                                      const std::vector<std::pair<double, double>>& scenarios,
                                      int repeats);

// Plain-text table in the evaluation layout: one column per scenario, row
// groups {OTE, PCTE} x {NRMSE, PCC} x {MAX, MEAN, STD}, then settle time.
std::string format_sweep_table(const RunConfig& base,
                               const std::vector<ScenarioResult>& results, int repeats);

}  // namespace aic
