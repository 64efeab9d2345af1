#include "aic/dynamics.hpp"

#include <cmath>

#include "aic/errors.hpp"

namespace aic {
namespace {

void require_finite(const Vec& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw DynamicsBlowup(std::string(what) + " produced a non-finite value in component " +
                           std::to_string(i + 1));
    }
  }
}

void require_finite(const Mat& m, const char* what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        throw DynamicsBlowup(std::string(what) + " produced a non-finite value at (" +
                             std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
}

Benchmark make_simo() {
  Benchmark b;
  b.name = "simo";
  b.plant.n_x = 2;
  b.plant.n_u = 1;
  b.plant.f = [](const Vec& x) {
    const double c = std::cos(2.0 * x[0]) + 2.0;
    Vec dx(2);
    dx[0] = -x[0] + x[1];
    dx[1] = -0.5 * x[0] - 0.5 * x[1] * (1.0 - c * c);
    return dx;
  };
  b.plant.g = [](const Vec& x) {
    Mat g(2, 1);
    g(0, 0) = 0.0;
    g(1, 0) = std::cos(2.0 * x[0]) + 2.0;
    return g;
  };
  b.reference.x_d = [](double t) {
    Vec xd(2);
    xd[0] = std::sin(t);
    xd[1] = std::cos(t) + std::sin(t);
    return xd;
  };
  b.reference.x_d_dot = [](double t) {
    Vec xd(2);
    xd[0] = std::cos(t);
    xd[1] = -std::sin(t) + std::cos(t);
    return xd;
  };
  return b;
}

Benchmark make_mimo() {
  Benchmark b = make_simo();  // same reference trajectory
  b.name = "mimo";
  b.plant.n_x = 2;
  b.plant.n_u = 2;
  b.plant.f = [](const Vec& x) {
    Vec dx(2);
    dx[0] = x[1] - x[0];
    dx[1] = 0.5 * (x[0] * x[1] - x[0]);
    return dx;
  };
  b.plant.g = [](const Vec& x) {
    Mat g(2, 2);
    g(0, 0) = 0.0;
    g(0, 1) = 3.0 + x[1];
    g(1, 0) = 1.0 + x[0];
    g(1, 1) = 0.0;
    return g;
  };
  return b;
}

Benchmark make_vsm(const VsmParams& p) {
  Benchmark b;
  b.name = "vsm";
  b.plant.n_x = 2;
  b.plant.n_u = 1;
  b.plant.f = [p](const Vec& x) {
    Vec dx(2);
    dx[0] = x[1];
    dx[1] = (p.p_imbalance - p.d_p * x[1] - p.p_max * std::sin(x[0])) / p.h;
    return dx;
  };
  b.plant.g = [p](const Vec&) {
    Mat g(2, 1);
    g(0, 0) = 0.0;
    g(1, 0) = 1.0 / p.h;
    return g;
  };
  const double delta_ref = p.delta_ref;
  b.reference.x_d = [delta_ref](double) {
    Vec xd(2);
    xd[0] = delta_ref;
    xd[1] = 0.0;
    return xd;
  };
  b.reference.x_d_dot = [](double) { return Vec::Zero(2).eval(); };
  return b;
}

}  // namespace

HurwitzDecomposition::HurwitzDecomposition(Vec diagonal) : diag_(std::move(diagonal)) {
  if (diag_.size() == 0) throw ConfigError("a_c_diag: must be non-empty");
  for (Eigen::Index i = 0; i < diag_.size(); ++i) {
    if (!(diag_[i] < 0.0)) {
      throw ConfigError("a_c_diag: entry " + std::to_string(i + 1) +
                        " must be strictly negative (Hurwitz)");
    }
  }
}

Vec eval_f(const PlantModel& plant, const Vec& x) {
  if (x.size() != plant.n_x) throw ConfigError("eval_f: state size mismatch");
  Vec out = plant.f(x);
  require_finite(out, "f(x)");
  return out;
}

Mat eval_g(const PlantModel& plant, const Vec& x) {
  if (x.size() != plant.n_x) throw ConfigError("eval_g: state size mismatch");
  Mat out = plant.g(x);
  require_finite(out, "g(x)");
  return out;
}

SimState step_euler(const PlantModel& plant, const SimState& s, const Vec& u, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (u.size() != plant.n_u) throw ConfigError("step_euler: input size mismatch");
  SimState next;
  next.t = s.t + dt;
  next.x = s.x + dt * (eval_f(plant, s.x) + eval_g(plant, s.x) * u);
  require_finite(next.x, "step_euler");
  return next;
}

std::pair<Vec, Vec> reference_at(const ReferenceTrajectory& traj, double t) {
  return {traj.x_d(t), traj.x_d_dot(t)};
}

Vec residual_dynamics(const PlantModel& plant, const HurwitzDecomposition& a_c, const Vec& x) {
  return eval_f(plant, x) - a_c.apply(x);
}

Benchmark make_benchmark(const std::string& name, const std::optional<VsmParams>& params) {
  if (name == "simo") return make_simo();
  if (name == "mimo") return make_mimo();
  if (name == "vsm") return make_vsm(params.value_or(VsmParams{}));
  throw ConfigError("benchmark: unknown name '" + name + "' (expected simo, mimo or vsm)");
}

}  // namespace aic
