#pragma once

#include <ostream>
#include <string>

#include "aic/controller.hpp"
#include "aic/critic.hpp"

namespace aic {

// Canonical trajectory column list for the given input dimension.
std::string trajectory_csv_header(int n_u);

// One row per step, 9 significant digits. Two-state benchmarks only.
void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log);

// Regular grid of the critic value over (e1, e2); columns e1,e2,value.
void write_value_surface_csv(std::ostream& os, const CriticNet& critic, double lo, double hi,
                             int points_per_axis);

// %.9g formatting used across all emitted files.
std::string fmt9(double v);

}  // namespace aic
