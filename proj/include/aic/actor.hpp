#pragma once

#include "aic/dynamics.hpp"
#include "aic/rng.hpp"

namespace aic {

// Common factor of the actor weight laws:
//   dt * (critic_grad * id_control_jac)' + dt * R * u_c,
// i.e. the exact gradient of dt*(u'Ru)/2 + V(e_next(u)) w.r.t. the command.
Vec bracket_term(const RowVec& critic_grad, const Mat& id_control_jac, const Mat& effort_weight,
                 const Vec& u_c, double dt);

// Two-layer perceptron policy u_c = W sigma(V e_hat), trained by descending
// the value-plus-effort objective through the critic/identifier chain.
class ActorNet {
 public:
  ActorNet(Mat output_weights, Mat hidden_weights, double eta_output, double eta_hidden);
  static ActorNet random_init(int n_u, int n_x, int hidden, double eta_output, double eta_hidden,
                              StreamRng& rng, double init_scale = 0.1);

  Vec act(const Vec& e_hat) const;

  struct Gradients {
    Mat output;  // n_u x h
    Mat hidden;  // h x n_x
  };
  // Update directions (pre learning rate, pre dt) for the given bracket.
  Gradients gradients(const Vec& bracket, const Vec& e_hat) const;

  // Descent step W -= dt*eta1*G_w, V -= dt*eta2*G_v. Returns the mean absolute
  // gradient entry across both matrices. Throws ActorDiverged on non-finite weights.
  double update(const Vec& bracket, const Vec& e_hat, double dt);

  const Mat& output_weights() const { return w_; }
  const Mat& hidden_weights() const { return v_; }
  void set_weights(Mat output_weights, Mat hidden_weights);
  int n_u() const { return static_cast<int>(w_.rows()); }
  int n_x() const { return static_cast<int>(v_.cols()); }
  int hidden_size() const { return static_cast<int>(v_.rows()); }

 private:
  Mat w_;  // n_u x h
  Mat v_;  // h x n_x
  double eta_w_;
  double eta_v_;
};

}  // namespace aic
