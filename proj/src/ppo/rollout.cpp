#include "hrl/ppo/rollout.hpp"

#include <algorithm>

#include "hrl/errors.hpp"
#include "hrl/nn/gaussian.hpp"
#include "hrl/random.hpp"

namespace hrl::ppo {

Shaping PassThroughReward::shape(const Eigen::VectorXd& /*observation*/, double global_reward) {
  Shaping out;
  out.shaped_reward = global_reward;
  return out;
}

std::vector<RolloutWorker> make_workers(std::uint64_t seed, int num_actors) {
  if (num_actors < 1) {
    throw ConfigurationError("at least one actor is required");
  }
  std::vector<RolloutWorker> workers;
  workers.reserve(static_cast<std::size_t>(num_actors));
  for (int k = 0; k < num_actors; ++k) {
    workers.emplace_back(make_stream(seed, Stream::Environment, static_cast<std::uint32_t>(k)));
  }
  return workers;
}

double Trajectory::bootstrap_value(int actor) const {
  if (actor < 0 || actor >= num_actors) {
    throw ConfigurationError("bootstrap_value: actor index out of range");
  }
  return next_values[static_cast<Eigen::Index>(actor + 1) * horizon - 1];
}

Trajectory collect_rollout(std::vector<RolloutWorker>& workers, const nn::NetworkParameters& actor,
                           const nn::NetworkParameters& critic, RewardProvider& reward_provider,
                           int horizon, std::mt19937_64& rng, std::int64_t env_steps_before) {
  if (workers.empty() || horizon < 1) {
    throw ConfigurationError("collect_rollout: need at least one worker and a positive horizon");
  }
  constexpr int obs_width = env::Observation::width;
  if (actor.input_width() != obs_width || critic.input_width() != obs_width ||
      critic.output_width() != 1 || actor.output_width() != actor.log_std.size()) {
    throw ConfigurationError("collect_rollout: networks are not shaped for the environment");
  }
  const int num_actors = static_cast<int>(workers.size());
  const Eigen::Index total = static_cast<Eigen::Index>(num_actors) * horizon;
  const int action_width = actor.output_width();
  const int depth = reward_provider.depth();

  Trajectory traj;
  traj.num_actors = num_actors;
  traj.horizon = horizon;
  traj.observations.resize(obs_width, total);
  traj.next_observations.resize(obs_width, total);
  traj.actions.resize(action_width, total);
  traj.log_probs.resize(total);
  traj.global_rewards.resize(total);
  traj.shaped_rewards.resize(total);
  traj.episode_done.assign(static_cast<std::size_t>(total), 0);
  traj.boundaries.assign(static_cast<std::size_t>(total), 0);
  traj.signals.resize(depth, total);
  traj.signal_actions.resize(depth, total);
  traj.signal_log_probs.resize(total);

  for (int a = 0; a < num_actors; ++a) {
    auto& worker = workers[static_cast<std::size_t>(a)];
    for (int t = 0; t < horizon; ++t) {
      if (worker.needs_reset) {
        worker.observation = worker.env.reset().to_vector();
        worker.episode_global = 0.0;
        worker.episode_shaped = 0.0;
        worker.needs_reset = false;
      }
      const Eigen::Index i = static_cast<Eigen::Index>(a) * horizon + t;
      const Eigen::VectorXd mean = nn::predict(actor, worker.observation);
      const Eigen::VectorXd action = nn::gaussian_sample(mean, actor.log_std, rng);
      const env::StepResult result = worker.env.step(action[0]);
      const Shaping shaping = reward_provider.shape(worker.observation, result.reward);

      traj.observations.col(i) = worker.observation;
      traj.actions.col(i) = action;
      traj.log_probs[i] = nn::gaussian_log_prob(mean, actor.log_std, action);
      traj.global_rewards[i] = result.reward;
      traj.shaped_rewards[i] = shaping.shaped_reward;
      if (depth > 0) {
        traj.signals.col(i) = shaping.signals;
        traj.signal_actions.col(i) = shaping.raw_action;
        traj.signal_log_probs[i] = shaping.log_prob;
      } else {
        traj.signal_log_probs[i] = 0.0;
      }

      const Eigen::VectorXd next_obs = result.observation.to_vector();
      traj.next_observations.col(i) = next_obs;
      worker.episode_global += result.reward;
      worker.episode_shaped += shaping.shaped_reward;
      const auto u = static_cast<std::size_t>(i);
      if (result.done) {
        traj.episode_done[u] = 1;
        traj.boundaries[u] = 1;
        traj.episodes.push_back({a, env_steps_before + static_cast<std::int64_t>(t + 1) * num_actors,
                                 worker.episode_global, worker.episode_shaped});
        worker.needs_reset = true;
      } else {
        worker.observation = next_obs;
      }
      if (t + 1 == horizon) {
        traj.boundaries[u] = 1;
      }
    }
  }

  traj.values = nn::predict(critic, traj.observations).row(0).transpose();
  traj.next_values = nn::predict(critic, traj.next_observations).row(0).transpose();
  std::stable_sort(traj.episodes.begin(), traj.episodes.end(),
                   [](const EpisodeSummary& x, const EpisodeSummary& y) {
                     return x.env_step != y.env_step ? x.env_step < y.env_step : x.actor < y.actor;
                   });
  return traj;
}

}  // namespace hrl::ppo
