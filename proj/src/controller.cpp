#include "aic/controller.hpp"

#include <cmath>
#include <utility>

#include "aic/channels.hpp"
#include "aic/errors.hpp"

namespace aic {

namespace {
constexpr double kStateEnvelope = 1e6;  // divergence guard on the plant state
}

AicController::AicController(IdentifierNet identifier, CriticNet critic, ActorNet actor,
                             CostWeights cost, double gamma_bar_c, Vec initial_state_guess,
                             double command_clamp, bool force_zero_command)
    : identifier_(std::move(identifier)),
      critic_(std::move(critic)),
      actor_(std::move(actor)),
      cost_(std::move(cost)),
      gamma_bar_c_(gamma_bar_c),
      last_prediction_(std::move(initial_state_guess)),
      command_clamp_(command_clamp),
      force_zero_command_(force_zero_command) {
  if (!(gamma_bar_c >= 0.0 && gamma_bar_c <= 1.0))
    throw ConfigError("gamma_bar_c: must lie in [0, 1]");
}

Vec AicController::control_step(const std::optional<Vec>& measurement, const Vec& x_d_now,
                                const Vec& x_d_next, double dt, StepRecord* rec) {
  const auto stage = [this](const char* name) {
    if (trace_) trace_->emplace_back(name);
  };

  // 1. Resolve the state estimate: measurement, or the cached prediction.
  stage("resolve_measurement");
  const Vec x_used = measurement ? *measurement : last_prediction_;

  // 2. Control command from the current tracking error.
  stage("act");
  const Vec e_hat = x_used - x_d_now;
  Vec u_c = actor_.act(e_hat);
  if (command_clamp_ > 0.0)
    u_c = u_c.cwiseMax(-command_clamp_).cwiseMin(command_clamp_);
  if (force_zero_command_) u_c.setZero();

  // 3. Next-step tracking error, with the command and with the dropout branch.
  stage("predict_error");
  const Vec zero_u = Vec::Zero(u_c.size());
  const Vec e_next_u = identifier_.predict_tracking_error(x_used, u_c, x_d_next, dt);
  const Vec e_next_0 = identifier_.predict_tracking_error(x_used, zero_u, x_d_next, dt);

  // 4. Critic update from the dropout-weighted Bellman residual.
  stage("critic_update");
  const double cost = running_cost(cost_, e_hat, u_c, dt);
  const double td = critic_.td_error(cost, e_hat, e_next_u, e_next_0, gamma_bar_c_);
  const double value_now = critic_.value(e_hat);
  critic_.update(td, e_hat, dt);

  // 5. Cache the mixture prediction, then train the identifier on the error of
  //    the previous step's prediction. No measurement, no ground truth: skip.
  stage("identifier_update");
  const Vec mixture = identifier_.mixture_prediction(x_used, u_c, gamma_bar_c_, dt);
  double x_tilde_norm = 0.0;
  if (measurement && has_prediction_) {
    const Vec x_tilde = x_used - last_prediction_;
    Vec x_bar(x_used.size() + u_c.size());
    x_bar << x_used, u_c;
    identifier_.update(x_tilde, x_bar, dt);
    x_tilde_norm = x_tilde.norm();
  }
  last_prediction_ = mixture;
  has_prediction_ = true;

  // 6. Actor update through the critic/identifier chain.
  stage("actor_update");
  const RowVec critic_grad = critic_.value_gradient(e_next_u);
  const Mat control_jac = identifier_.control_jacobian(x_used, u_c);
  const Vec bracket = bracket_term(critic_grad, control_jac, cost_.r, u_c, dt);
  const double grad_mean = actor_.update(bracket, e_hat, dt);

  if (rec) {
    rec->x_used = x_used;
    rec->e_hat = e_hat;
    rec->u_c = u_c;
    rec->td = td;
    rec->value = value_now;
    rec->x_tilde_norm = x_tilde_norm;
    rec->w_i_norm = identifier_.output_weights().norm();
    rec->v_i_norm = identifier_.hidden_weights().norm();
    rec->w_c_norm = critic_.weights().norm();
    rec->w_a_norm = actor_.output_weights().norm();
    rec->v_a_norm = actor_.hidden_weights().norm();
    rec->actor_grad_mean = grad_mean;
  }
  return u_c;
}

AicController make_controller(const Benchmark& benchmark, const RunConfig& cfg) {
  const int n_x = benchmark.plant.n_x;
  const int n_u = benchmark.plant.n_u;
  HurwitzDecomposition a_c(cfg.ac_diag);

  StreamRng id_rng(cfg.seed, "identifier");
  StreamRng actor_rng(cfg.seed, "actor");

  IdentifierNet identifier = IdentifierNet::random_init(n_x, n_u, cfg.h_i, cfg.eta_i1, cfg.eta_i2,
                                                        cfg.rho, std::move(a_c), id_rng);
  BasisSet basis = BasisSet::quadratic(n_x);
  RowVec w0 = RowVec::Zero(basis.size);
  {  // stage-cost-shaped prior: V0(e) = scale * e'Qe on the diagonal features
    const double scale = 0.5;
    int k = 0;
    for (int i = 0; i < n_x; ++i)
      for (int j = i; j < n_x; ++j, ++k)
        if (i == j) w0[k] = scale * cfg.q_diag[i];
  }
  CriticNet critic(basis, cfg.eta_c, w0);
  ActorNet actor = ActorNet::random_init(n_u, n_x, cfg.h_a, cfg.eta_a1, cfg.eta_a2, actor_rng);
  CostWeights cost = CostWeights::diagonal(cfg.q_diag, cfg.r_diag);

  return AicController(std::move(identifier), std::move(critic), std::move(actor), std::move(cost),
                       cfg.effective_belief_gamma_c(), benchmark.reference.x_d(0.0),
                       cfg.command_clamp, cfg.uncontrolled);
}

TrajectoryLog run_episode(const Benchmark& benchmark, const RunConfig& cfg,
                          const StepObserver& observer) {
  TrajectoryLog log;
  log.benchmark = benchmark.name;
  log.seed = cfg.seed;
  log.config_hash = cfg.hash();
  log.dt = cfg.dt;
  log.n_u = benchmark.plant.n_u;

  DropoutChannel sensor(cfg.gamma_bar_s, cfg.seed, "sensor");
  DropoutChannel actuator(cfg.gamma_bar_c, cfg.seed, "actuator");
  AicController controller = make_controller(benchmark, cfg);

  Vec x = benchmark.reference.x_d(0.0) + cfg.x0_offset;
  const long n_steps = std::lround(cfg.horizon / cfg.dt);
  log.steps.reserve(static_cast<std::size_t>(std::max(0L, n_steps)));

  for (long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    try {
      const Vec x_d_now = benchmark.reference.x_d(t);
      const Vec x_d_next = benchmark.reference.x_d(t + cfg.dt);

      StepRecord rec;
      rec.t = t;
      rec.x_true = x;
      rec.x_d = x_d_now;
      rec.gamma_s = sensor.sample();
      const std::optional<Vec> meas = rec.gamma_s ? std::optional<Vec>(x) : std::nullopt;
      const Vec u_c = controller.control_step(meas, x_d_now, x_d_next, cfg.dt, &rec);
      rec.gamma_c = actuator.sample();
      rec.u_applied = static_cast<double>(rec.gamma_c) * u_c;

      log.steps.push_back(rec);
      if (observer) observer(controller, rec);

      x = step_euler(benchmark.plant, SimState{t, x}, rec.u_applied, cfg.dt).x;
      if (x.cwiseAbs().maxCoeff() > kStateEnvelope)
        throw DynamicsBlowup("state envelope exceeded (|x| > 1e6)");
    } catch (const DynamicsBlowup& e) {
      log.diverged = true;
      log.divergence_reason = std::string(e.what()) + " at step " + std::to_string(k);
      break;
    } catch (const IdentifierDiverged& e) {
      log.diverged = true;
      log.divergence_reason = std::string(e.what()) + " at step " + std::to_string(k);
      break;
    } catch (const CriticDiverged& e) {
      log.diverged = true;
      log.divergence_reason = std::string(e.what()) + " at step " + std::to_string(k);
      break;
    } catch (const ActorDiverged& e) {
      log.diverged = true;
      log.divergence_reason = std::string(e.what()) + " at step " + std::to_string(k);
      break;
    }
  }
  return log;
}

TrajectoryLog run_episode(const RunConfig& cfg, const StepObserver& observer) {
  const Benchmark benchmark =
      make_benchmark(cfg.benchmark, cfg.benchmark == "vsm"
                                        ? std::optional<VsmParams>(cfg.vsm)
                                        : std::nullopt);
  return run_episode(benchmark, cfg, observer);
}

}  // namespace aic
