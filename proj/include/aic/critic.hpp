#pragma once

#include <functional>

#include "aic/dynamics.hpp"
#include "aic/rng.hpp"

namespace aic {

// Fixed feature map psi over the tracking error, with its analytic Jacobian.
struct BasisSet {
  int input_dim = 0;
  int size = 0;  // m
  std::function<Vec(const Vec&)> features;  // n_x -> m
  std::function<Mat(const Vec&)> jacobian;  // n_x -> m x n_x

  // All degree-2 monomials e_i e_j, i <= j, lexicographic.
  // For n_x = 2 this is exactly [e1^2, e1 e2, e2^2].
  static BasisSet quadratic(int n_x);
};

// Positive-definite tracking / effort weights of the stage cost.
struct CostWeights {
  Mat q;  // n_x x n_x
  Mat r;  // n_u x n_u

  // Builds diagonal weights; throws ConfigError unless all entries positive.
  static CostWeights diagonal(const Vec& q_diag, const Vec& r_diag);
};

// Rectangle-rule stage cost (e'Qe + u'Ru) * dt.
double running_cost(const CostWeights& cw, const Vec& e, const Vec& u, double dt);

// Linear-in-basis value approximator with the dropout-weighted one-step
// Bellman target.
class CriticNet {
 public:
  CriticNet(BasisSet basis, double learning_rate, RowVec initial_weights);
  static CriticNet random_init(BasisSet basis, double learning_rate, StreamRng& rng,
                               double init_scale = 0.1);

  double value(const Vec& e) const;
  RowVec value_gradient(const Vec& e) const;  // 1 x n_x

  // cost + gc*V(e_next_with_u) + (1-gc)*V(e_next_zero_u) - V(e_now).
  double td_error(double cost, const Vec& e_now, const Vec& e_next_with_u,
                  const Vec& e_next_zero_u, double gamma_bar_c) const;

  // W <- W + dt * eta * td * psi(e_now)'. Throws CriticDiverged on non-finite weights.
  void update(double td, const Vec& e_now, double dt);

  const RowVec& weights() const { return w_; }
  void set_weights(RowVec w);
  const BasisSet& basis() const { return basis_; }
  double learning_rate() const { return eta_; }

 private:
  BasisSet basis_;
  RowVec w_;  // 1 x m
  double eta_;
};

}  // namespace aic
