#include "hrl/ppo/trainer.hpp"

#include "hrl/env/pendulum.hpp"
#include "hrl/ppo/gae.hpp"
#include "hrl/random.hpp"

namespace hrl::ppo {

namespace {

std::span<const double> view(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

AdvantageBatch baseline_advantages(const Trajectory& trajectory, const GaeConfig& gae) {
  return compute_gae(view(trajectory.global_rewards), view(trajectory.values),
                     view(trajectory.next_values), trajectory.boundaries, gae);
}

Agent make_main_agent(const Architecture& arch, int action_width, std::mt19937_64& rng) {
  constexpr int obs_width = env::Observation::width;
  nn::InitOptions actor_init;
  actor_init.output_gain = 0.01;
  actor_init.log_std_width = action_width;
  nn::NetworkParameters actor = nn::initialize_network(
      nn::mlp_specs(obs_width, arch.hidden_layers, arch.hidden_width, action_width), actor_init,
      rng);
  nn::InitOptions critic_init;
  critic_init.output_gain = 1.0;
  nn::NetworkParameters critic = nn::initialize_network(
      nn::mlp_specs(obs_width, arch.hidden_layers, arch.hidden_width, 1), critic_init, rng);
  return Agent::create(std::move(actor), std::move(critic));
}

BaselineTrainer::BaselineTrainer(std::uint64_t seed, const PpoConfig& ppo, const GaeConfig& gae,
                                 const Architecture& arch)
    : ppo_(ppo),
      gae_(gae),
      workers_(make_workers(seed, ppo.num_actors)),
      sampling_rng_(make_stream(seed, Stream::MainSampling)),
      shuffle_rng_(make_stream(seed, Stream::MainShuffle)) {
  ppo_.validate(env::PendulumPhysics::episode_steps);
  gae_.validate();
  auto init_rng = make_stream(seed, Stream::MainInit);
  agent_ = make_main_agent(arch, 1, init_rng);
}

IterationResult BaselineTrainer::iterate() {
  Trajectory traj = collect_rollout(workers_, agent_.actor, agent_.critic, provider_, ppo_.horizon,
                                    sampling_rng_, env_steps_);
  env_steps_ += traj.size();
  const AdvantageBatch adv = baseline_advantages(traj, gae_);
  const UpdateBatch batch{traj.observations, traj.actions, traj.log_probs, adv.advantages,
                          adv.value_targets};
  IterationResult result;
  result.main_stats = ppo_update(agent_, batch, ppo_, shuffle_rng_);
  result.episodes = std::move(traj.episodes);
  return result;
}

}  // namespace hrl::ppo
