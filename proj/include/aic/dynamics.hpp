#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace aic {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;

// Affine nonlinear plant  x_dot = f(x) + g(x) u.
struct PlantModel {
  int n_x = 0;
  int n_u = 0;
  std::function<Vec(const Vec&)> f;  // n_x -> n_x
  std::function<Mat(const Vec&)> g;  // n_x -> n_x x n_u
};

// Diagonal Hurwitz matrix A_c split out of f, so that f(x) = A_c x + f_c(x).
class HurwitzDecomposition {
 public:
  // Throws ConfigError unless every diagonal entry is strictly negative.
  explicit HurwitzDecomposition(Vec diagonal);

  const Vec& diagonal() const { return diag_; }
  int size() const { return static_cast<int>(diag_.size()); }

  Vec apply(const Vec& x) const { return diag_.cwiseProduct(x); }
  // (-A_c)^{-T} v; diagonal, so this is v_i / (-a_i) entrywise.
  Vec solve_neg_transpose(const Vec& v) const { return -v.cwiseQuotient(diag_); }

 private:
  Vec diag_;
};

struct ReferenceTrajectory {
  std::function<Vec(double)> x_d;      // desired state at time t
  std::function<Vec(double)> x_d_dot;  // its analytic derivative
};

struct SimState {
  double t = 0.0;
  Vec x;
};

// Swing-equation parameters for the virtual synchronous machine benchmark.
// State is (rotor angle delta [rad], frequency deviation from nominal [rad/s]);
// the constant power imbalance acts from t = 0 on.
struct VsmParams {
  double omega_nom = 2.0 * 3.14159265358979323846 * 50.0;  // rad/s, reporting only
  double d_p = 0.5;           // damping [p.u.]
  double h = 0.1;             // virtual inertia [s]
  double p_max = 1.0;         // max dispatchable power [p.u.]
  double p_imbalance = 4.0;   // injected imbalance [p.u.]
  double delta_ref = 0.78539816339744830962;  // pi/4, angle setpoint [rad]
};

struct Benchmark {
  std::string name;
  PlantModel plant;
  ReferenceTrajectory reference;
};

Vec eval_f(const PlantModel& plant, const Vec& x);
Mat eval_g(const PlantModel& plant, const Vec& x);

// Forward Euler step: x' = x + dt (f(x) + g(x) u). Throws DynamicsBlowup on
// non-finite results, ConfigError on bad dt or input size.
SimState step_euler(const PlantModel& plant, const SimState& s, const Vec& u, double dt);

std::pair<Vec, Vec> reference_at(const ReferenceTrajectory& traj, double t);

// f_c(x) = f(x) - A_c x.
Vec residual_dynamics(const PlantModel& plant, const HurwitzDecomposition& a_c, const Vec& x);

// name in {simo, mimo, vsm}; vsm requires params. Throws ConfigError otherwise.
Benchmark make_benchmark(const std::string& name,
                         const std::optional<VsmParams>& params = std::nullopt);

}  // namespace aic
