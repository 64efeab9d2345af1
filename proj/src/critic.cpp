#include "aic/critic.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "aic/errors.hpp"

namespace aic {

BasisSet BasisSet::quadratic(int n_x) {
  if (n_x < 1) throw ConfigError("basis: state dimension must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_x; ++i)
    for (int j = i; j < n_x; ++j) pairs.emplace_back(i, j);

  BasisSet b;
  b.input_dim = n_x;
  b.size = static_cast<int>(pairs.size());
  b.features = [pairs](const Vec& e) {
    Vec psi(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) psi[k] = e[pairs[k].first] * e[pairs[k].second];
    return psi;
  };
  b.jacobian = [pairs, n_x](const Vec& e) {
    Mat jac = Mat::Zero(pairs.size(), n_x);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      jac(k, i) += e[j];
      jac(k, j) += e[i];
    }
    return jac;
  };
  return b;
}

CostWeights CostWeights::diagonal(const Vec& q_diag, const Vec& r_diag) {
  for (Eigen::Index i = 0; i < q_diag.size(); ++i)
    if (!(q_diag[i] > 0.0))
      throw ConfigError("q_diag: entry " + std::to_string(i + 1) + " must be positive");
  for (Eigen::Index i = 0; i < r_diag.size(); ++i)
    if (!(r_diag[i] > 0.0))
      throw ConfigError("r_diag: entry " + std::to_string(i + 1) + " must be positive");
  CostWeights cw;
  cw.q = q_diag.asDiagonal();
  cw.r = r_diag.asDiagonal();
  return cw;
}

double running_cost(const CostWeights& cw, const Vec& e, const Vec& u, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  return dt * (e.dot(cw.q * e) + u.dot(cw.r * u));
}

CriticNet::CriticNet(BasisSet basis, double learning_rate, RowVec initial_weights)
    : basis_(std::move(basis)), w_(std::move(initial_weights)), eta_(learning_rate) {
  if (w_.size() != basis_.size) throw ConfigError("critic: weight size must match basis size");
}

CriticNet CriticNet::random_init(BasisSet basis, double learning_rate, StreamRng& rng,
                                 double init_scale) {
  RowVec w(basis.size);
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = rng.uniform(-init_scale, init_scale);
  return CriticNet(std::move(basis), learning_rate, std::move(w));
}

double CriticNet::value(const Vec& e) const {
  return w_.dot(basis_.features(e));
}

RowVec CriticNet::value_gradient(const Vec& e) const {
  return w_ * basis_.jacobian(e);
}

double CriticNet::td_error(double cost, const Vec& e_now, const Vec& e_next_with_u,
                           const Vec& e_next_zero_u, double gamma_bar_c) const {
  if (!(gamma_bar_c >= 0.0 && gamma_bar_c <= 1.0))
    throw ConfigError("gamma_bar_c: must lie in [0, 1]");
  return cost + gamma_bar_c * value(e_next_with_u) + (1.0 - gamma_bar_c) * value(e_next_zero_u) -
         value(e_now);
}

void CriticNet::update(double td, const Vec& e_now, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  w_ += dt * eta_ * td * basis_.features(e_now).transpose();
  if (!w_.allFinite()) throw CriticDiverged("critic weights became non-finite");
}

void CriticNet::set_weights(RowVec w) {
  if (w.size() != basis_.size) throw ConfigError("critic: weight size must match basis size");
  w_ = std::move(w);
}

}  // namespace aic
