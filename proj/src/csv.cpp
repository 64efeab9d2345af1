#include "aic/csv.hpp"

#include <cstdio>

#include "aic/errors.hpp"

namespace aic {

std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string trajectory_csv_header(int n_u) {
  std::string h = "t,x1,x2,xd1,xd2,gamma_s,gamma_c,x_used1,x_used2,e1,e2";
  for (int i = 1; i <= n_u; ++i) h += ",u" + std::to_string(i);
  for (int i = 1; i <= n_u; ++i) h += ",u_applied" + std::to_string(i);
  h += ",td,value,x_tilde_norm,w_i_norm,v_i_norm,w_c_norm,w_a_norm,v_a_norm,actor_grad_mean";
  return h;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
  os << trajectory_csv_header(log.n_u) << "\n";
  for (const auto& s : log.steps) {
    if (s.x_true.size() != 2)
      throw ConfigError("trajectory csv: schema is fixed to two-state benchmarks");
    os << fmt9(s.t) << ',' << fmt9(s.x_true[0]) << ',' << fmt9(s.x_true[1]) << ','
       << fmt9(s.x_d[0]) << ',' << fmt9(s.x_d[1]) << ',' << s.gamma_s << ',' << s.gamma_c << ','
       << fmt9(s.x_used[0]) << ',' << fmt9(s.x_used[1]) << ',' << fmt9(s.e_hat[0]) << ','
       << fmt9(s.e_hat[1]);
    for (Eigen::Index i = 0; i < s.u_c.size(); ++i) os << ',' << fmt9(s.u_c[i]);
    for (Eigen::Index i = 0; i < s.u_applied.size(); ++i) os << ',' << fmt9(s.u_applied[i]);
    os << ',' << fmt9(s.td) << ',' << fmt9(s.value) << ',' << fmt9(s.x_tilde_norm) << ','
       << fmt9(s.w_i_norm) << ',' << fmt9(s.v_i_norm) << ',' << fmt9(s.w_c_norm) << ','
       << fmt9(s.w_a_norm) << ',' << fmt9(s.v_a_norm) << ',' << fmt9(s.actor_grad_mean) << "\n";
  }
}

void write_value_surface_csv(std::ostream& os, const CriticNet& critic, double lo, double hi,
                             int points_per_axis) {
  if (points_per_axis < 2) throw ConfigError("surface: need at least 2 grid points per axis");
  if (!(hi > lo)) throw ConfigError("surface: grid bounds must satisfy hi > lo");
  os << "e1,e2,value\n";
  const double step = (hi - lo) / (points_per_axis - 1);
  Vec e(2);
  for (int i = 0; i < points_per_axis; ++i) {
    e[0] = lo + i * step;
    for (int j = 0; j < points_per_axis; ++j) {
      e[1] = lo + j * step;
      os << fmt9(e[0]) << ',' << fmt9(e[1]) << ',' << fmt9(critic.value(e)) << "\n";
    }
  }
}

}  // namespace aic
