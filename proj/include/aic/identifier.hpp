#pragma once

#include "aic/dynamics.hpp"
#include "aic/rng.hpp"

namespace aic {

// sigma(z) = 2/(1+exp(-z)) - 1, range (-1, 1); equals tanh(z/2).
double bipolar_sigmoid(double z);
Vec bipolar_sigmoid(const Vec& z);

// Two-layer perceptron that learns the residual dynamics f_c(x) + g(x) u
// online. Estimated state dynamics: x_dot ~= A_c x_s + W sigma(V [x_s; u_c]).
// Supplies one-step predictions, the dropout-probability mixture prediction,
// and exact input Jacobians for the actor chain rule.
class IdentifierNet {
 public:
  IdentifierNet(Mat output_weights, Mat hidden_weights, double eta_output, double eta_hidden,
                double rho, HurwitzDecomposition a_c);
  static IdentifierNet random_init(int n_x, int n_u, int hidden, double eta_output,
                                   double eta_hidden, double rho, HurwitzDecomposition a_c,
                                   StreamRng& rng, double init_scale = 0.1);

  // F(x_s, u_c) = W sigma(V [x_s; u_c]).
  Vec forward(const Vec& x_s, const Vec& u_c) const;

  // x_s + dt (A_c x_s + F(x_s, u_c)).
  Vec predict_state(const Vec& x_s, const Vec& u_c, double dt) const;

  // predict_state(...) - x_d_next.
  Vec predict_tracking_error(const Vec& x_s, const Vec& u_c, const Vec& x_d_next,
                             double dt) const;

  // gc * predict_state(x_s, u_c, dt) + (1 - gc) * predict_state(x_s, 0, dt).
  Vec mixture_prediction(const Vec& x_s, const Vec& u_c, double gamma_bar_c, double dt) const;

  // One Euler step of the stability-motivated weight laws, driven by the state
  // estimation error x_tilde = x_s - x_hat_s and the regressor x_bar = [x_s; u_c].
  // Throws IdentifierDiverged if any weight becomes non-finite.
  void update(const Vec& x_tilde, const Vec& x_bar, double dt);

  // Exact Jacobian of forward() w.r.t. [x; u], shape n_x x (n_x + n_u).
  Mat input_jacobian(const Vec& x_s, const Vec& u_c) const;
  // Last n_u columns of input_jacobian.
  Mat control_jacobian(const Vec& x_s, const Vec& u_c) const;

  const Mat& output_weights() const { return w_; }
  const Mat& hidden_weights() const { return v_; }
  void set_weights(Mat output_weights, Mat hidden_weights);
  const HurwitzDecomposition& hurwitz() const { return a_c_; }
  int n_x() const { return static_cast<int>(w_.rows()); }
  int n_u() const { return static_cast<int>(v_.cols()) - n_x(); }
  int hidden_size() const { return static_cast<int>(v_.rows()); }

 private:
  Vec concat(const Vec& x_s, const Vec& u_c) const;

  Mat w_;  // n_x x h
  Mat v_;  // h x (n_x + n_u)
  double eta_w_;
  double eta_v_;
  double rho_;
  HurwitzDecomposition a_c_;
};

}  // namespace aic
