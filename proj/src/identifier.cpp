#include "aic/identifier.hpp"

#include <cmath>
#include <utility>

#include "aic/errors.hpp"

namespace aic {

double bipolar_sigmoid(double z) {
  return std::tanh(0.5 * z);  // algebraically 2/(1+e^-z) - 1, saturation-safe
}

Vec bipolar_sigmoid(const Vec& z) {
  return z.unaryExpr([](double v) { return bipolar_sigmoid(v); });
}

IdentifierNet::IdentifierNet(Mat output_weights, Mat hidden_weights, double eta_output,
                             double eta_hidden, double rho, HurwitzDecomposition a_c)
    : w_(std::move(output_weights)),
      v_(std::move(hidden_weights)),
      eta_w_(eta_output),
      eta_v_(eta_hidden),
      rho_(rho),
      a_c_(std::move(a_c)) {
  if (w_.cols() != v_.rows()) throw ConfigError("identifier: hidden widths disagree");
  if (v_.cols() <= w_.rows()) throw ConfigError("identifier: hidden layer must take [x; u]");
  if (a_c_.size() != w_.rows()) throw ConfigError("identifier: A_c size must match n_x");
  if (rho_ < 0.0) throw ConfigError("rho: must be >= 0");
}

IdentifierNet IdentifierNet::random_init(int n_x, int n_u, int hidden, double eta_output,
                                         double eta_hidden, double rho, HurwitzDecomposition a_c,
                                         StreamRng& rng, double init_scale) {
  Mat w(n_x, hidden);
  Mat v(hidden, n_x + n_u);
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-init_scale, init_scale);
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = rng.uniform(-init_scale, init_scale);
  return IdentifierNet(std::move(w), std::move(v), eta_output, eta_hidden, rho, std::move(a_c));
}

Vec IdentifierNet::concat(const Vec& x_s, const Vec& u_c) const {
  if (x_s.size() != n_x()) throw ConfigError("identifier: state size mismatch");
  if (u_c.size() != n_u()) throw ConfigError("identifier: input size mismatch");
  Vec x_bar(x_s.size() + u_c.size());
  x_bar << x_s, u_c;
  return x_bar;
}

Vec IdentifierNet::forward(const Vec& x_s, const Vec& u_c) const {
  return w_ * bipolar_sigmoid(v_ * concat(x_s, u_c));
}

Vec IdentifierNet::predict_state(const Vec& x_s, const Vec& u_c, double dt) const {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  return x_s + dt * (a_c_.apply(x_s) + forward(x_s, u_c));
}

Vec IdentifierNet::predict_tracking_error(const Vec& x_s, const Vec& u_c, const Vec& x_d_next,
                                          double dt) const {
  return predict_state(x_s, u_c, dt) - x_d_next;
}

Vec IdentifierNet::mixture_prediction(const Vec& x_s, const Vec& u_c, double gamma_bar_c,
                                      double dt) const {
  if (!(gamma_bar_c >= 0.0 && gamma_bar_c <= 1.0))
    throw ConfigError("gamma_bar_c: must lie in [0, 1]");
  return gamma_bar_c * predict_state(x_s, u_c, dt) +
         (1.0 - gamma_bar_c) * predict_state(x_s, Vec::Zero(n_u()), dt);
}

void IdentifierNet::update(const Vec& x_tilde, const Vec& x_bar, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (x_tilde.size() != n_x() || x_bar.size() != n_x() + n_u())
    throw ConfigError("identifier: update argument size mismatch");

  const Vec sig = bipolar_sigmoid(v_ * x_bar);
  const Vec gate = Vec::Ones(sig.size()) - sig.cwiseProduct(sig);  // diag(I - Pi)
  // Backpropagated error filtered through the stable decomposition.
  const Vec xi = a_c_.solve_neg_transpose(x_tilde);
  const double err_norm = x_tilde.norm();

  const Mat w_prev = w_;
  w_ += dt * (eta_w_ * xi * sig.transpose() - rho_ * err_norm * w_prev);
  const Vec hidden_delta = gate.cwiseProduct(w_prev.transpose() * xi);
  v_ += dt * (eta_v_ * hidden_delta * x_bar.transpose() - rho_ * err_norm * v_);

  if (!w_.allFinite() || !v_.allFinite())
    throw IdentifierDiverged("identifier weights became non-finite");
}

Mat IdentifierNet::input_jacobian(const Vec& x_s, const Vec& u_c) const {
  const Vec sig = bipolar_sigmoid(v_ * concat(x_s, u_c));
  // d sigma / dz = (1 - sigma^2) / 2 for the bipolar sigmoid.
  const Vec dsig = 0.5 * (Vec::Ones(sig.size()) - sig.cwiseProduct(sig));
  return w_ * dsig.asDiagonal() * v_;
}

Mat IdentifierNet::control_jacobian(const Vec& x_s, const Vec& u_c) const {
  return input_jacobian(x_s, u_c).rightCols(n_u());
}

void IdentifierNet::set_weights(Mat output_weights, Mat hidden_weights) {
  if (output_weights.rows() != w_.rows() || output_weights.cols() != w_.cols() ||
      hidden_weights.rows() != v_.rows() || hidden_weights.cols() != v_.cols())
    throw ConfigError("identifier: set_weights shape mismatch");
  w_ = std::move(output_weights);
  v_ = std::move(hidden_weights);
}

}  // namespace aic
