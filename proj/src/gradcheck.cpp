#include "aic/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "aic/actor.hpp"
#include "aic/critic.hpp"
#include "aic/identifier.hpp"
#include "aic/rng.hpp"

namespace aic {
namespace {

constexpr double kFdStep = 1e-6;

Mat random_matrix(int rows, int cols, StreamRng& rng) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

Vec random_vector(int n, StreamRng& rng) {
  Vec v(n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

HurwitzDecomposition random_hurwitz(int n, StreamRng& rng) {
  Vec d(n);
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = -rng.uniform(0.5, 2.0);
  return HurwitzDecomposition(d);
}

double identifier_jacobian_err(StreamRng& rng) {
  const int n_x = 2;
  const int n_u = 1 + static_cast<int>(rng.next_u64() % 2);
  const int h = 3 + static_cast<int>(rng.next_u64() % 6);
  IdentifierNet net(random_matrix(n_x, h, rng), random_matrix(h, n_x + n_u, rng), 0.0, 0.0, 0.0,
                    random_hurwitz(n_x, rng));
  const Vec x = random_vector(n_x, rng);
  const Vec u = random_vector(n_u, rng);

  const Mat analytic = net.input_jacobian(x, u);
  Mat numeric(n_x, n_x + n_u);
  for (int j = 0; j < n_x + n_u; ++j) {
    Vec xp = x, xm = x, up = u, um = u;
    if (j < n_x) {
      xp[j] += kFdStep;
      xm[j] -= kFdStep;
    } else {
      up[j - n_x] += kFdStep;
      um[j - n_x] -= kFdStep;
    }
    numeric.col(j) = (net.forward(xp, up) - net.forward(xm, um)) / (2.0 * kFdStep);
  }
  return relative_error(analytic, numeric);
}

double critic_gradient_err(StreamRng& rng) {
  const int n_x = 2;
  BasisSet basis = BasisSet::quadratic(n_x);
  CriticNet critic(basis, 0.0, random_matrix(1, basis.size, rng).row(0));
  const Vec e = random_vector(n_x, rng);

  const RowVec analytic = critic.value_gradient(e);
  RowVec numeric(n_x);
  for (int j = 0; j < n_x; ++j) {
    Vec ep = e, em = e;
    ep[j] += kFdStep;
    em[j] -= kFdStep;
    numeric[j] = (critic.value(ep) - critic.value(em)) / (2.0 * kFdStep);
  }
  return relative_error(analytic, numeric);
}

struct ActorFixture {
  IdentifierNet identifier;
  CriticNet critic;
  Mat effort;  // R
  Vec x_s, x_d_next;
  double dt;

  // One-step objective dt*(u'Ru)/2 + V(e_next(u)); the bracket is its gradient.
  double objective(const Vec& u) const {
    const Vec e_next = identifier.predict_tracking_error(x_s, u, x_d_next, dt);
    return 0.5 * dt * u.dot(effort * u) + critic.value(e_next);
  }

  Vec analytic_gradient(const Vec& u) const {
    const Vec e_next = identifier.predict_tracking_error(x_s, u, x_d_next, dt);
    return bracket_term(critic.value_gradient(e_next), identifier.control_jacobian(x_s, u), effort,
                        u, dt);
  }
};

ActorFixture random_actor_fixture(int n_u, StreamRng& rng) {
  const int n_x = 2;
  const int h = 3 + static_cast<int>(rng.next_u64() % 6);
  BasisSet basis = BasisSet::quadratic(n_x);
  Vec r_diag(n_u);
  for (int i = 0; i < n_u; ++i) r_diag[i] = rng.uniform(0.1, 1.0);
  return ActorFixture{
      IdentifierNet(random_matrix(n_x, h, rng), random_matrix(h, n_x + n_u, rng), 0.0, 0.0, 0.0,
                    random_hurwitz(n_x, rng)),
      CriticNet(basis, 0.0, random_matrix(1, basis.size, rng).row(0)),
      Mat(r_diag.asDiagonal()),
      random_vector(n_x, rng),
      random_vector(n_x, rng),
      0.05};
}

double actor_command_gradient_err(StreamRng& rng) {
  const int n_u = 1 + static_cast<int>(rng.next_u64() % 2);
  const ActorFixture fx = random_actor_fixture(n_u, rng);
  const Vec u = random_vector(n_u, rng);

  const Vec analytic = fx.analytic_gradient(u);
  Vec numeric(n_u);
  for (int j = 0; j < n_u; ++j) {
    Vec up = u, um = u;
    up[j] += kFdStep;
    um[j] -= kFdStep;
    numeric[j] = (fx.objective(up) - fx.objective(um)) / (2.0 * kFdStep);
  }
  return relative_error(analytic, numeric);
}

double actor_weight_gradient_err(StreamRng& rng) {
  const int n_u = 1 + static_cast<int>(rng.next_u64() % 2);
  const int n_x = 2;
  const int h_a = 3 + static_cast<int>(rng.next_u64() % 6);
  const ActorFixture fx = random_actor_fixture(n_u, rng);
  ActorNet actor(random_matrix(n_u, h_a, rng), random_matrix(h_a, n_x, rng), 0.0, 0.0);
  const Vec e_hat = random_vector(n_x, rng);

  const Vec u = actor.act(e_hat);
  const Mat analytic = actor.gradients(fx.analytic_gradient(u), e_hat).output;

  Mat numeric(n_u, h_a);
  Mat w = actor.output_weights();
  const Mat v = actor.hidden_weights();
  for (int i = 0; i < n_u; ++i) {
    for (int j = 0; j < h_a; ++j) {
      Mat wp = w, wm = w;
      wp(i, j) += kFdStep;
      wm(i, j) -= kFdStep;
      const ActorNet ap(wp, v, 0.0, 0.0);
      const ActorNet am(wm, v, 0.0, 0.0);
      numeric(i, j) =
          (fx.objective(ap.act(e_hat)) - fx.objective(am.act(e_hat))) / (2.0 * kFdStep);
    }
  }
  return relative_error(analytic, numeric);
}

}  // namespace

double relative_error(const Mat& analytic, const Mat& numeric) {
  const double scale = std::max({analytic.norm(), numeric.norm(), 1e-12});
  return (analytic - numeric).norm() / scale;
}

std::vector<GradCheckResult> run_gradient_checks(std::uint64_t seed, int points) {
  StreamRng rng(seed, "gradcheck");
  GradCheckResult identifier{"identifier input jacobian", 0.0, 1e-5};
  GradCheckResult critic{"critic value gradient", 0.0, 1e-6};
  GradCheckResult actor_cmd{"actor composed objective gradient", 0.0, 1e-4};
  GradCheckResult actor_w{"actor output-weight update direction", 0.0, 1e-4};
  for (int k = 0; k < points; ++k) {
    identifier.worst_rel_err = std::max(identifier.worst_rel_err, identifier_jacobian_err(rng));
    critic.worst_rel_err = std::max(critic.worst_rel_err, critic_gradient_err(rng));
    actor_cmd.worst_rel_err = std::max(actor_cmd.worst_rel_err, actor_command_gradient_err(rng));
    actor_w.worst_rel_err = std::max(actor_w.worst_rel_err, actor_weight_gradient_err(rng));
  }
  return {identifier, critic, actor_cmd, actor_w};
}

}  // namespace aic
