#pragma once

#include <optional>
#include <vector>

#include "aic/controller.hpp"
#include "aic/dynamics.hpp"

namespace aic {

// Normalized root-mean-square error between N x n_x trajectories:
//   sqrt(mean squared entry error) / (mean per-state range of `actual`).
// Throws MetricUndefined when any state of `actual` has zero range.
double nrmse(const Mat& actual, const Mat& desired);

// Pearson correlation; the matrix overload averages per-state coefficients.
// Throws MetricUndefined on constant series.
double pcc(const Vec& actual, const Vec& desired);
double pcc(const Mat& actual, const Mat& desired);

// Earliest time from which the true tracking error stays within
// band_fraction * (mean desired-state range) in the sup norm.
std::optional<double> settle_time(const TrajectoryLog& log, double band_fraction);

struct Window {
  double t_begin = 0.0;
  double t_end = 0.0;
};

// OTE = whole horizon; PCTE = [settle, end], or the final 50% when unsettled.
std::pair<Window, Window> split_windows(const TrajectoryLog& log, std::optional<double> settle);

struct Aggregate {
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population convention
};

Aggregate aggregate(const std::vector<double>& values);

// actual / desired state matrices restricted to log steps with t in the window.
std::pair<Mat, Mat> window_trajectories(const TrajectoryLog& log, const Window& window);

struct MetricReport {
  double ote_nrmse = 0.0;
  double ote_pcc = 0.0;
  double pcte_nrmse = 0.0;
  double pcte_pcc = 0.0;
  std::optional<double> settle;
};

MetricReport compute_report(const TrajectoryLog& log, double settle_band);

}  // namespace aic
