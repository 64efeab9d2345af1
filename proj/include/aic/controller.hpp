#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aic/actor.hpp"
#include "aic/config.hpp"
#include "aic/critic.hpp"
#include "aic/dynamics.hpp"
#include "aic/identifier.hpp"

namespace aic {

struct StepRecord {
  double t = 0.0;
  Vec x_true;
  Vec x_d;
  int gamma_s = 1;
  int gamma_c = 1;
  Vec x_used;  // measurement, or the cached prediction on sensor dropout
  Vec e_hat;
  Vec u_c;
  Vec u_applied;  // gamma_c * u_c
  double td = 0.0;
  double value = 0.0;
  double x_tilde_norm = 0.0;  // 0 when the identifier update was skipped
  double w_i_norm = 0.0;
  double v_i_norm = 0.0;
  double w_c_norm = 0.0;
  double w_a_norm = 0.0;
  double v_a_norm = 0.0;
  double actor_grad_mean = 0.0;
};

struct TrajectoryLog {
  std::vector<StepRecord> steps;
  std::string benchmark;
  std::uint64_t seed = 0;
  std::string config_hash;
  double dt = 0.0;
  int n_u = 0;
  bool diverged = false;
  std::string divergence_reason;
};

// One closed-loop controller instance: identifier, critic and actor stepped in
// the fixed six-stage order (resolve measurement, act, predict errors, update
// critic, cache mixture + update identifier, update actor).
class AicController {
 public:
  AicController(IdentifierNet identifier, CriticNet critic, ActorNet actor, CostWeights cost,
                double gamma_bar_c, Vec initial_state_guess, double command_clamp = 0.0,
                bool force_zero_command = false);

  // Runs one control step; `measurement` empty means the sensor packet was
  // dropped. Fills the controller-side fields of `rec` when given.
  Vec control_step(const std::optional<Vec>& measurement, const Vec& x_d_now, const Vec& x_d_next,
                   double dt, StepRecord* rec = nullptr);

  const IdentifierNet& identifier() const { return identifier_; }
  const CriticNet& critic() const { return critic_; }
  const ActorNet& actor() const { return actor_; }
  IdentifierNet& identifier() { return identifier_; }
  CriticNet& critic() { return critic_; }
  ActorNet& actor() { return actor_; }
  const Vec& last_prediction() const { return last_prediction_; }

  // Test hook: appends the stage label of each update phase to `sink`.
  void set_stage_trace(std::vector<std::string>* sink) { trace_ = sink; }

 private:
  IdentifierNet identifier_;
  CriticNet critic_;
  ActorNet actor_;
  CostWeights cost_;
  double gamma_bar_c_;
  Vec last_prediction_;
  bool has_prediction_ = false;
  double command_clamp_;
  bool force_zero_command_;
  std::vector<std::string>* trace_ = nullptr;
};

// Builds the controller for a run: seeded weight substreams "identifier",
// "actor", "critic"; quadratic basis over the tracking error.
AicController make_controller(const Benchmark& benchmark, const RunConfig& cfg);

using StepObserver = std::function<void(const AicController&, const StepRecord&)>;

// Simulates one full episode: gated measurements in, gated commands out.
// Deterministic given (config, seed). Divergence aborts the loop but returns
// the partial log with `diverged` set.
TrajectoryLog run_episode(const Benchmark& benchmark, const RunConfig& cfg,
                          const StepObserver& observer = nullptr);
// Convenience overload constructing the benchmark from the config.
TrajectoryLog run_episode(const RunConfig& cfg, const StepObserver& observer = nullptr);

}  // namespace aic
