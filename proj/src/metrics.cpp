#include "aic/metrics.hpp"

#include <cmath>
#include <string>

#include "aic/errors.hpp"

namespace aic {
namespace {

// Mean per-state range of the desired trajectory in a log.
double mean_desired_range(const TrajectoryLog& log) {
  const int n_x = static_cast<int>(log.steps.front().x_d.size());
  double total = 0.0;
  for (int j = 0; j < n_x; ++j) {
    double lo = log.steps.front().x_d[j];
    double hi = lo;
    for (const auto& s : log.steps) {
      lo = std::min(lo, s.x_d[j]);
      hi = std::max(hi, s.x_d[j]);
    }
    total += hi - lo;
  }
  return total / n_x;
}

}  // namespace

double nrmse(const Mat& actual, const Mat& desired) {
  if (actual.rows() != desired.rows() || actual.cols() != desired.cols())
    throw ConfigError("nrmse: trajectory shapes differ");
  if (actual.rows() < 2) throw ConfigError("nrmse: need at least two samples");
  const auto n = static_cast<double>(actual.size());
  const double numerator = std::sqrt((actual - desired).squaredNorm() / n);
  double mean_range = 0.0;
  for (Eigen::Index j = 0; j < actual.cols(); ++j) {
    const double range = actual.col(j).maxCoeff() - actual.col(j).minCoeff();
    if (range <= 0.0)
      throw MetricUndefined("nrmse: state " + std::to_string(j + 1) + " has zero range");
    mean_range += range;
  }
  mean_range /= static_cast<double>(actual.cols());
  return numerator / mean_range;
}

double pcc(const Vec& actual, const Vec& desired) {
  if (actual.size() != desired.size() || actual.size() < 2)
    throw ConfigError("pcc: series must have equal length >= 2");
  const Vec a = actual.array() - actual.mean();
  const Vec d = desired.array() - desired.mean();
  const double na = a.norm();
  const double nd = d.norm();
  if (na == 0.0 || nd == 0.0) throw MetricUndefined("pcc: constant series");
  return a.dot(d) / (na * nd);
}

double pcc(const Mat& actual, const Mat& desired) {
  if (actual.rows() != desired.rows() || actual.cols() != desired.cols())
    throw ConfigError("pcc: trajectory shapes differ");
  double total = 0.0;
  for (Eigen::Index j = 0; j < actual.cols(); ++j)
    total += pcc(Vec(actual.col(j)), Vec(desired.col(j)));
  return total / static_cast<double>(actual.cols());
}

std::optional<double> settle_time(const TrajectoryLog& log, double band_fraction) {
  if (!(band_fraction > 0.0 && band_fraction < 1.0))
    throw ConfigError("settle_band: must lie in (0, 1)");
  if (log.steps.empty()) return std::nullopt;
  const double threshold = band_fraction * mean_desired_range(log);
  // Walk backward to the last step that violates the band.
  std::ptrdiff_t last_violation = -1;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(log.steps.size()) - 1; i >= 0; --i) {
    const auto& s = log.steps[static_cast<std::size_t>(i)];
    if ((s.x_true - s.x_d).cwiseAbs().maxCoeff() > threshold) {
      last_violation = i;
      break;
    }
  }
  if (last_violation < 0) return 0.0;
  const auto next = static_cast<std::size_t>(last_violation) + 1;
  if (next >= log.steps.size()) return std::nullopt;  // never settles
  return log.steps[next].t;
}

std::pair<Window, Window> split_windows(const TrajectoryLog& log, std::optional<double> settle) {
  Window ote;
  if (!log.steps.empty()) {
    ote.t_begin = log.steps.front().t;
    ote.t_end = log.steps.back().t;
  }
  Window pcte = ote;
  if (settle) {
    pcte.t_begin = *settle;
  } else {
    pcte.t_begin = ote.t_begin + 0.5 * (ote.t_end - ote.t_begin);
  }
  return {ote, pcte};
}

Aggregate aggregate(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("aggregate: need at least one value");
  Aggregate a;
  a.max = values.front();
  double sum = 0.0;
  for (double v : values) {
    a.max = std::max(a.max, v);
    sum += v;
  }
  a.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - a.mean) * (v - a.mean);
  a.std = std::sqrt(sq / static_cast<double>(values.size()));
  return a;
}

std::pair<Mat, Mat> window_trajectories(const TrajectoryLog& log, const Window& window) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const double t = log.steps[i].t;
    if (t >= window.t_begin && t <= window.t_end) idx.push_back(i);
  }
  const int n_x = log.steps.empty() ? 0 : static_cast<int>(log.steps.front().x_true.size());
  Mat actual(idx.size(), n_x);
  Mat desired(idx.size(), n_x);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    actual.row(static_cast<Eigen::Index>(r)) = log.steps[idx[r]].x_true.transpose();
    desired.row(static_cast<Eigen::Index>(r)) = log.steps[idx[r]].x_d.transpose();
  }
  return {actual, desired};
}

MetricReport compute_report(const TrajectoryLog& log, double settle_band) {
  MetricReport report;
  report.settle = settle_time(log, settle_band);
  const auto [ote, pcte] = split_windows(log, report.settle);
  const auto [ote_a, ote_d] = window_trajectories(log, ote);
  const auto [pcte_a, pcte_d] = window_trajectories(log, pcte);
  report.ote_nrmse = nrmse(ote_a, ote_d);
  report.ote_pcc = pcc(ote_a, ote_d);
  report.pcte_nrmse = nrmse(pcte_a, pcte_d);
  report.pcte_pcc = pcc(pcte_a, pcte_d);
  return report;
}

}  // namespace aic
