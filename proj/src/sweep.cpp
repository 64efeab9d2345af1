#include "aic/sweep.hpp"

#include <cstdio>
#include <future>

#include "aic/controller.hpp"
#include "aic/errors.hpp"

namespace aic {
namespace {

RunOutcome run_one(RunConfig cfg) {
  RunOutcome out;
  out.seed = cfg.seed;
  const TrajectoryLog log = run_episode(cfg);
  if (log.diverged) {
    out.diverged = true;
    out.divergence_reason = log.divergence_reason;
    return out;
  }
  out.report = compute_report(log, cfg.settle_band);
  return out;
}

std::string cell16(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%16s", s.c_str());
  return buf;
}

std::string cell16(double v) {
  char num[24];
  std::snprintf(num, sizeof(num), "%.4f", v);
  return cell16(std::string(num));
}

}  // namespace

std::vector<ScenarioResult> run_sweep(const RunConfig& base,
                                      const std::vector<std::pair<double, double>>& scenarios,
                                      int repeats) {
  if (repeats < 1) throw ConfigError("repeats: must be >= 1");
  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(scenarios.size() * static_cast<std::size_t>(repeats));
  for (const auto& [gs, gc] : scenarios) {
    for (int r = 0; r < repeats; ++r) {
      RunConfig cfg = base;
      cfg.gamma_bar_s = gs;
      cfg.gamma_bar_c = gc;
      cfg.seed = base.seed + static_cast<std::uint64_t>(r);
      futures.push_back(std::async(std::launch::async, run_one, std::move(cfg)));
    }
  }

  std::vector<ScenarioResult> results;
  results.reserve(scenarios.size());
  std::size_t next = 0;
  for (const auto& [gs, gc] : scenarios) {
    ScenarioResult sr;
    sr.gamma_bar_s = gs;
    sr.gamma_bar_c = gc;
    std::vector<double> on, op, pn, pp, settles;
    for (int r = 0; r < repeats; ++r) {
      RunOutcome out = futures[next++].get();
      if (out.diverged) {
        ++sr.diverged_count;
      } else {
        on.push_back(out.report.ote_nrmse);
        op.push_back(out.report.ote_pcc);
        pn.push_back(out.report.pcte_nrmse);
        pp.push_back(out.report.pcte_pcc);
        if (out.report.settle) settles.push_back(*out.report.settle);
      }
      sr.runs.push_back(std::move(out));
    }
    if (!on.empty()) {
      sr.ote_nrmse = aggregate(on);
      sr.ote_pcc = aggregate(op);
      sr.pcte_nrmse = aggregate(pn);
      sr.pcte_pcc = aggregate(pp);
    }
    if (!settles.empty()) sr.settle_mean = aggregate(settles).mean;
    results.push_back(std::move(sr));
  }
  return results;
}

std::string format_sweep_table(const RunConfig& base, const std::vector<ScenarioResult>& results,
                               int repeats) {
  std::string out;
  out += "benchmark=" + base.benchmark + " preset=" + base.preset +
         " repeats=" + std::to_string(repeats) + " base_seed=" + std::to_string(base.seed) + "\n";

  const auto row_label = [](const char* window, const char* metric, const char* agg) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%-5s%-9s%-5s", window, metric, agg);
    return std::string(buf);
  };

  out += std::string(19, ' ');
  for (const auto& sr : results) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "gs=%.2f,gc=%.2f", sr.gamma_bar_s, sr.gamma_bar_c);
    out += cell16(std::string(buf));
  }
  out += "\n";

  struct RowSpec {
    const char* window;
    const char* metric;
    const char* agg;
    double Aggregate::* field;
    bool pcte;
    bool is_pcc;
  };
  const RowSpec rows[] = {
      {"OTE", "NRMSE", "MAX", &Aggregate::max, false, false},
      {"OTE", "NRMSE", "MEAN", &Aggregate::mean, false, false},
      {"OTE", "NRMSE", "STD", &Aggregate::std, false, false},
      {"OTE", "PCC", "MAX", &Aggregate::max, false, true},
      {"OTE", "PCC", "MEAN", &Aggregate::mean, false, true},
      {"OTE", "PCC", "STD", &Aggregate::std, false, true},
      {"PCTE", "NRMSE", "MAX", &Aggregate::max, true, false},
      {"PCTE", "NRMSE", "MEAN", &Aggregate::mean, true, false},
      {"PCTE", "NRMSE", "STD", &Aggregate::std, true, false},
      {"PCTE", "PCC", "MAX", &Aggregate::max, true, true},
      {"PCTE", "PCC", "MEAN", &Aggregate::mean, true, true},
      {"PCTE", "PCC", "STD", &Aggregate::std, true, true},
  };
  for (const auto& spec : rows) {
    out += row_label(spec.window, spec.metric, spec.agg);
    for (const auto& sr : results) {
      if (sr.diverged_count == static_cast<int>(sr.runs.size())) {
        out += cell16(std::string("DIVERGED"));
        continue;
      }
      const Aggregate& agg = spec.pcte ? (spec.is_pcc ? sr.pcte_pcc : sr.pcte_nrmse)
                                       : (spec.is_pcc ? sr.ote_pcc : sr.ote_nrmse);
      out += cell16(agg.*spec.field);
    }
    out += "\n";
  }

  out += row_label("", "SETTLE", "MEAN");
  for (const auto& sr : results) {
    if (sr.settle_mean) {
      out += cell16(*sr.settle_mean);
    } else {
      out += cell16(std::string("(none)"));
    }
  }
  out += "\n";

  out += row_label("", "DIVERGED", "");
  for (const auto& sr : results) {
    out += cell16(std::to_string(sr.diverged_count) + "/" + std::to_string(sr.runs.size()));
  }
  out += "\n";
  char band[16];
  std::snprintf(band, sizeof(band), "%g%%", 100.0 * base.settle_band);
  out += "# settle band = " + std::string(band) +
         " of mean desired range; PCTE falls back to the final 50% when unsettled;\n"
         "# STD is the population convention; seeds run base_seed..base_seed+repeats-1 per "
         "scenario.\n";
  return out;
}

}  // namespace aic
