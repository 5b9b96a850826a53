#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

#include "hrl/hierarchy/compose.hpp"
#include "hrl/ppo/rollout.hpp"
#include "hrl/ppo/trainer.hpp"
#include "hrl/ppo/update.hpp"

namespace hrl::hierarchy {

enum class RewardNormalization : std::uint8_t { None, RunningStd };
enum class CriticTarget : std::uint8_t { Global, Shaped };

struct HierarchyConfig {
  int depth = 3;  // number of reward-agent outputs
  Squash squash = Squash::Sigmoid01;
  RewardNormalization shaped_reward_normalization = RewardNormalization::RunningStd;
  /// Reward stream the main critic regresses on. Global trains it on R alone; Shaped keeps
  /// it on the same scale as the advantages it feeds. The reward agent's own critic always
  /// regresses on R.
  CriticTarget critic_target = CriticTarget::Shaped;
  ppo::Architecture architecture{5, 64};

  void validate() const;
};

RewardNormalization parse_normalization(std::string_view name);
std::string_view to_string(RewardNormalization kind);
CriticTarget parse_critic_target(std::string_view name);
std::string_view to_string(CriticTarget kind);

/// The secondary actor-critic. Its actor emits `depth` raw Gaussian outputs that are squashed
/// into hierarchy signals; its critic estimates returns of the global reward.
struct RewardAgent {
  ppo::Agent agent;
  Squash squash = Squash::Sigmoid01;

  [[nodiscard]] int depth() const { return agent.actor.output_width(); }
};

/// Builds a reward agent of the configured depth. For depth 0 the actor keeps a single hidden
/// stack but has no outputs, so it is never evaluated.
RewardAgent make_reward_agent(const HierarchyConfig& config, std::mt19937_64& rng);

struct EmittedSignals {
  Eigen::VectorXd signals;     // squashed
  Eigen::VectorXd raw_action;  // pre-squash Gaussian sample (or mean)
  double log_prob = 0.0;       // of raw_action under the pre-squash Gaussian
};

/// Samples (stochastic) or takes the mean of the reward actor's Gaussian at `observation` and
/// squashes it. Depth 0 returns empty signals and draws nothing from `rng`.
EmittedSignals emit_signals(const RewardAgent& agent, const Eigen::VectorXd& observation,
                            std::mt19937_64& rng, bool stochastic);

/// Reward provider that composes R with freshly emitted signals at every step.
class HierarchicalReward final : public ppo::RewardProvider {
 public:
  HierarchicalReward(const RewardAgent& agent, std::mt19937_64& rng, bool stochastic = true)
      : agent_(agent), rng_(rng), stochastic_(stochastic) {}

  [[nodiscard]] int depth() const override { return agent_.depth(); }
  ppo::Shaping shape(const Eigen::VectorXd& observation, double global_reward) override;

 private:
  const RewardAgent& agent_;
  std::mt19937_64& rng_;
  bool stochastic_;
};

/// Welford running variance of the shaped rewards seen so far.
class RunningStd {
 public:
  void update(const Eigen::VectorXd& values);
  [[nodiscard]] double std_dev() const;
  [[nodiscard]] std::int64_t count() const { return count_; }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace hrl::hierarchy
