#include "aic/actor.hpp"

#include <utility>

#include "aic/errors.hpp"
#include "aic/identifier.hpp"

namespace aic {

Vec bracket_term(const RowVec& critic_grad, const Mat& id_control_jac, const Mat& effort_weight,
                 const Vec& u_c, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (critic_grad.size() != id_control_jac.rows())
    throw ConfigError("bracket_term: critic gradient / jacobian shape mismatch");
  if (id_control_jac.cols() != u_c.size() || effort_weight.rows() != u_c.size() ||
      effort_weight.cols() != u_c.size())
    throw ConfigError("bracket_term: command / effort weight shape mismatch");
  return dt * (critic_grad * id_control_jac).transpose() + dt * (effort_weight * u_c);
}

ActorNet::ActorNet(Mat output_weights, Mat hidden_weights, double eta_output, double eta_hidden)
    : w_(std::move(output_weights)),
      v_(std::move(hidden_weights)),
      eta_w_(eta_output),
      eta_v_(eta_hidden) {
  if (w_.cols() != v_.rows()) throw ConfigError("actor: hidden widths disagree");
}

ActorNet ActorNet::random_init(int n_u, int n_x, int hidden, double eta_output, double eta_hidden,
                               StreamRng& rng, double init_scale) {
  Mat w(n_u, hidden);
  Mat v(hidden, n_x);
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-init_scale, init_scale);
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = rng.uniform(-init_scale, init_scale);
  return ActorNet(std::move(w), std::move(v), eta_output, eta_hidden);
}

Vec ActorNet::act(const Vec& e_hat) const {
  if (e_hat.size() != n_x()) throw ConfigError("actor: error size mismatch");
  return w_ * bipolar_sigmoid(v_ * e_hat);
}

ActorNet::Gradients ActorNet::gradients(const Vec& bracket, const Vec& e_hat) const {
  if (bracket.size() != n_u()) throw ConfigError("actor: bracket size mismatch");
  if (e_hat.size() != n_x()) throw ConfigError("actor: error size mismatch");
  const Vec sig = bipolar_sigmoid(v_ * e_hat);
  const Vec gate = Vec::Ones(sig.size()) - sig.cwiseProduct(sig);  // diag(I - Pi)
  Gradients g;
  g.output = bracket * sig.transpose();
  g.hidden = gate.cwiseProduct(w_.transpose() * bracket) * e_hat.transpose();
  return g;
}

double ActorNet::update(const Vec& bracket, const Vec& e_hat, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  const Gradients g = gradients(bracket, e_hat);
  w_ -= dt * eta_w_ * g.output;
  v_ -= dt * eta_v_ * g.hidden;
  if (!w_.allFinite() || !v_.allFinite()) throw ActorDiverged("actor weights became non-finite");
  const double total = g.output.cwiseAbs().sum() + g.hidden.cwiseAbs().sum();
  return total / static_cast<double>(g.output.size() + g.hidden.size());
}

void ActorNet::set_weights(Mat output_weights, Mat hidden_weights) {
  if (output_weights.rows() != w_.rows() || output_weights.cols() != w_.cols() ||
      hidden_weights.rows() != v_.rows() || hidden_weights.cols() != v_.cols())
    throw ConfigError("actor: set_weights shape mismatch");
  w_ = std::move(output_weights);
  v_ = std::move(hidden_weights);
}

}  // namespace aic
