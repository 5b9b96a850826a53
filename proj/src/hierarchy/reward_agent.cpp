#include "hrl/hierarchy/reward_agent.hpp"

#include <cmath>
#include <string>

#include "hrl/env/pendulum.hpp"
#include "hrl/errors.hpp"
#include "hrl/nn/gaussian.hpp"

namespace hrl::hierarchy {

void HierarchyConfig::validate() const {
  if (depth < 0) {
    throw ConfigurationError("hierarchy depth must be non-negative");
  }
  if (architecture.hidden_layers < 0 || architecture.hidden_width < 1) {
    throw ConfigurationError("reward agent architecture is invalid");
  }
}

RewardNormalization parse_normalization(std::string_view name) {
  if (name == "none") return RewardNormalization::None;
  if (name == "running_std") return RewardNormalization::RunningStd;
  throw ConfigurationError("unknown shaped_reward_normalization '" + std::string(name) + "'");
}

std::string_view to_string(RewardNormalization kind) {
  return kind == RewardNormalization::None ? "none" : "running_std";
}

CriticTarget parse_critic_target(std::string_view name) {
  if (name == "global") return CriticTarget::Global;
  if (name == "shaped") return CriticTarget::Shaped;
  throw ConfigurationError("unknown critic_target '" + std::string(name) + "'");
}

std::string_view to_string(CriticTarget kind) {
  return kind == CriticTarget::Global ? "global" : "shaped";
}

RewardAgent make_reward_agent(const HierarchyConfig& config, std::mt19937_64& rng) {
  config.validate();
  RewardAgent out;
  out.squash = config.squash;
  if (config.depth == 0) {
    return out;
  }
  constexpr int obs_width = env::Observation::width;
  const auto& arch = config.architecture;
  nn::InitOptions actor_init;
  actor_init.output_gain = 0.01;
  actor_init.log_std_width = config.depth;
  nn::NetworkParameters actor = nn::initialize_network(
      nn::mlp_specs(obs_width, arch.hidden_layers, arch.hidden_width, config.depth), actor_init,
      rng);
  nn::NetworkParameters critic = nn::initialize_network(
      nn::mlp_specs(obs_width, arch.hidden_layers, arch.hidden_width, 1), nn::InitOptions{}, rng);
  out.agent = ppo::Agent::create(std::move(actor), std::move(critic));
  return out;
}

EmittedSignals emit_signals(const RewardAgent& agent, const Eigen::VectorXd& observation,
                            std::mt19937_64& rng, bool stochastic) {
  EmittedSignals out;
  if (agent.depth() == 0) {
    return out;
  }
  const auto& actor = agent.agent.actor;
  const Eigen::VectorXd mean = nn::predict(actor, observation);
  out.raw_action = stochastic ? nn::gaussian_sample(mean, actor.log_std, rng) : mean;
  out.log_prob = nn::gaussian_log_prob(mean, actor.log_std, out.raw_action);
  out.signals = squash(agent.squash, out.raw_action);
  return out;
}

ppo::Shaping HierarchicalReward::shape(const Eigen::VectorXd& observation, double global_reward) {
  EmittedSignals emitted = emit_signals(agent_, observation, rng_, stochastic_);
  ppo::Shaping out;
  out.shaped_reward = compose(global_reward, emitted.signals);
  out.signals = std::move(emitted.signals);
  out.raw_action = std::move(emitted.raw_action);
  out.log_prob = emitted.log_prob;
  return out;
}

void RunningStd::update(const Eigen::VectorXd& values) {
  for (const double x : values) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
}

double RunningStd::std_dev() const {
  if (count_ < 2) {
    return 1.0;
  }
  return std::sqrt(m2_ / static_cast<double>(count_));
}

}  // namespace hrl::hierarchy
