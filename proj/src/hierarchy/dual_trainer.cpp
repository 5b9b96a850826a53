#include "hrl/hierarchy/dual_trainer.hpp"

#include "hrl/env/pendulum.hpp"
#include "hrl/nn/network.hpp"
#include "hrl/ppo/gae.hpp"
#include "hrl/random.hpp"

namespace hrl::hierarchy {

namespace {

std::span<const double> view(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

ppo::AdvantageBatch main_agent_targets(const ppo::Trajectory& traj, const HierarchyConfig& hierarchy,
                                       const ppo::GaeConfig& gae, RunningStd& shaped_scale) {
  Eigen::VectorXd shaped = traj.shaped_rewards;
  if (hierarchy.depth > 0 &&
      hierarchy.shaped_reward_normalization == RewardNormalization::RunningStd) {
    shaped_scale.update(traj.shaped_rewards);
    shaped /= shaped_scale.std_dev() + 1e-8;
  }
  ppo::AdvantageBatch out =
      ppo::compute_gae(view(shaped), view(traj.values), view(traj.next_values), traj.boundaries, gae);
  if (hierarchy.critic_target == CriticTarget::Global) {
    out.value_targets = ppo::compute_gae(view(traj.global_rewards), view(traj.values),
                                         view(traj.next_values), traj.boundaries, gae)
                            .value_targets;
  }
  return out;
}

DualStepResult dual_train_step(ppo::Agent& main_agent, RewardAgent& reward_agent,
                               DualStepContext& context, const ppo::PpoConfig& main_config,
                               const ppo::PpoConfig& reward_config, const ppo::GaeConfig& gae,
                               const HierarchyConfig& hierarchy) {
  HierarchicalReward provider(reward_agent, context.reward_sampling_rng);
  DualStepResult result;
  ppo::Trajectory& traj = result.trajectory;
  traj = ppo::collect_rollout(context.workers, main_agent.actor, main_agent.critic, provider,
                              main_config.horizon, context.main_sampling_rng,
                              context.env_steps_before);

  const ppo::AdvantageBatch main_adv =
      main_agent_targets(traj, hierarchy, gae, context.shaped_reward_scale);
  const ppo::UpdateBatch main_batch{traj.observations, traj.actions, traj.log_probs,
                                    main_adv.advantages, main_adv.value_targets};
  result.main_stats = ppo::ppo_update(main_agent, main_batch, main_config, context.main_shuffle_rng);

  if (reward_agent.depth() > 0) {
    ppo::Agent& agent = reward_agent.agent;
    const Eigen::VectorXd values = nn::predict(agent.critic, traj.observations).row(0).transpose();
    const Eigen::VectorXd next_values =
        nn::predict(agent.critic, traj.next_observations).row(0).transpose();
    const ppo::AdvantageBatch reward_adv = ppo::compute_gae(
        view(traj.global_rewards), view(values), view(next_values), traj.boundaries, gae);
    const ppo::UpdateBatch reward_batch{traj.observations, traj.signal_actions,
                                        traj.signal_log_probs, reward_adv.advantages,
                                        reward_adv.value_targets};
    result.reward_stats =
        ppo::ppo_update(agent, reward_batch, reward_config, context.reward_shuffle_rng);
  }
  return result;
}

DualTrainer::DualTrainer(std::uint64_t seed, const ppo::PpoConfig& ppo, const ppo::GaeConfig& gae,
                         const ppo::Architecture& main_arch, const HierarchyConfig& hierarchy)
    : ppo_(ppo),
      gae_(gae),
      hierarchy_(hierarchy),
      workers_(ppo::make_workers(seed, ppo.num_actors)),
      main_sampling_rng_(make_stream(seed, Stream::MainSampling)),
      reward_sampling_rng_(make_stream(seed, Stream::RewardSampling)),
      main_shuffle_rng_(make_stream(seed, Stream::MainShuffle)),
      reward_shuffle_rng_(make_stream(seed, Stream::RewardShuffle)) {
  ppo_.validate(env::PendulumPhysics::episode_steps);
  gae_.validate();
  hierarchy_.validate();
  auto main_init = make_stream(seed, Stream::MainInit);
  main_ = ppo::make_main_agent(main_arch, 1, main_init);
  auto reward_init = make_stream(seed, Stream::RewardInit);
  reward_ = make_reward_agent(hierarchy_, reward_init);
}

ppo::IterationResult DualTrainer::iterate() {
  DualStepContext context{workers_,          main_sampling_rng_, reward_sampling_rng_,
                          main_shuffle_rng_, reward_shuffle_rng_, shaped_scale_,
                          env_steps_};
  DualStepResult step = dual_train_step(main_, reward_, context, ppo_, ppo_, gae_, hierarchy_);
  env_steps_ += step.trajectory.size();
  ppo::IterationResult out;
  out.episodes = std::move(step.trajectory.episodes);
  out.main_stats = std::move(step.main_stats);
  out.reward_stats = std::move(step.reward_stats);
  return out;
}

const ppo::Agent* DualTrainer::reward_agent() const {
  return reward_.depth() > 0 ? &reward_.agent : nullptr;
}

}  // namespace hrl::hierarchy
