#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hrl/env/pendulum.hpp"
#include "hrl/nn/network.hpp"

namespace hrl::ppo {

/// Per-step output of a reward provider.
struct Shaping {
  double shaped_reward = 0.0;
  Eigen::VectorXd signals;     // post-squash hierarchy signals, empty for pass-through
  Eigen::VectorXd raw_action;  // pre-squash sample the signals came from
  double log_prob = 0.0;       // log-probability of raw_action
};

/// Turns the environment's global reward into the reward the main agent learns from.
class RewardProvider {
 public:
  virtual ~RewardProvider() = default;
  /// Number of signals emitted per step.
  [[nodiscard]] virtual int depth() const = 0;
  /// Called once per step with the observation the main agent acted on and the resulting R.
  virtual Shaping shape(const Eigen::VectorXd& observation, double global_reward) = 0;
};

/// Baseline provider: the shaped reward is the global reward.
class PassThroughReward final : public RewardProvider {
 public:
  [[nodiscard]] int depth() const override { return 0; }
  Shaping shape(const Eigen::VectorXd& observation, double global_reward) override;
};

struct EpisodeSummary {
  int actor = 0;
  std::int64_t env_step = 0;  // total environment steps (all actors) at completion
  double return_global = 0.0;
  double return_shaped = 0.0;
};

/// One of the N parallel actors: an environment plus its running episode bookkeeping.
struct RolloutWorker {
  explicit RolloutWorker(std::mt19937_64 env_rng) : env(std::move(env_rng)) {}

  env::PendulumEnv env;
  Eigen::VectorXd observation;
  double episode_global = 0.0;
  double episode_shaped = 0.0;
  bool needs_reset = true;
};

/// Builds N workers whose reset streams are derived from `seed`.
std::vector<RolloutWorker> make_workers(std::uint64_t seed, int num_actors);

/// Flat record of one rollout. Step i belongs to actor i / T at time i % T (actor-major).
struct Trajectory {
  int num_actors = 0;
  int horizon = 0;
  Eigen::MatrixXd observations;       // obs_width x NT
  Eigen::MatrixXd next_observations;  // successor observation of each step, before any reset
  Eigen::MatrixXd actions;            // action_width x NT, unclipped Gaussian samples
  Eigen::VectorXd log_probs;          // behavior log-probabilities
  Eigen::VectorXd global_rewards;     // R_t
  Eigen::VectorXd shaped_rewards;     // r_t
  Eigen::VectorXd values;             // V(s_t) under the main critic
  Eigen::VectorXd next_values;        // V(next observation)
  std::vector<std::uint8_t> episode_done;  // environment reported done after this step
  std::vector<std::uint8_t> boundaries;    // episode end or end of the actor's segment

  Eigen::MatrixXd signals;          // depth x NT
  Eigen::MatrixXd signal_actions;   // depth x NT, pre-squash
  Eigen::VectorXd signal_log_probs;

  std::vector<EpisodeSummary> episodes;  // ordered by (env_step, actor)

  [[nodiscard]] Eigen::Index size() const { return log_probs.size(); }
  /// V(s_T) of the given actor's segment.
  [[nodiscard]] double bootstrap_value(int actor) const;
};

/// Runs every worker for `horizon` steps under `actor`'s Gaussian policy, then evaluates the
/// critic on all visited and successor observations. Workers are processed in index order and
/// all action noise comes from `rng`, so the result is a pure function of the inputs.
Trajectory collect_rollout(std::vector<RolloutWorker>& workers, const nn::NetworkParameters& actor,
                           const nn::NetworkParameters& critic, RewardProvider& reward_provider,
                           int horizon, std::mt19937_64& rng, std::int64_t env_steps_before);

}  // namespace hrl::ppo
