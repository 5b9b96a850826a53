#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hrl/hierarchy/reward_agent.hpp"
#include "hrl/ppo/config.hpp"
#include "hrl/ppo/trainer.hpp"

namespace hrl::hierarchy {

/// Everything one dual step reads and advances besides the two agents.
struct DualStepContext {
  std::vector<ppo::RolloutWorker>& workers;
  std::mt19937_64& main_sampling_rng;
  std::mt19937_64& reward_sampling_rng;
  std::mt19937_64& main_shuffle_rng;
  std::mt19937_64& reward_shuffle_rng;
  RunningStd& shaped_reward_scale;
  std::int64_t env_steps_before = 0;
};

struct DualStepResult {
  ppo::Trajectory trajectory;
  ppo::UpdateStats main_stats;
  std::optional<ppo::UpdateStats> reward_stats;
};

/// Advantages of the main agent from the shaped rewards (divided by their running std when
/// configured and depth > 0) and its critic targets from the stream chosen by `critic_target`.
ppo::AdvantageBatch main_agent_targets(const ppo::Trajectory& trajectory,
                                       const HierarchyConfig& hierarchy, const ppo::GaeConfig& gae,
                                       RunningStd& shaped_scale);

/// One shared rollout followed by the two updates, main agent first:
///  - the main agent's advantages come from the shaped reward r = compose(R, signals), while
///    its critic regresses on targets built from the stream chosen by `critic_target`;
///  - the reward agent treats its pre-squash signal sample as its action and the global
///    reward R as its reward, with its own critic fitted to R-returns.
/// At depth 0 the shaped reward equals R and the reward-agent update is skipped.
DualStepResult dual_train_step(ppo::Agent& main_agent, RewardAgent& reward_agent,
                               DualStepContext& context, const ppo::PpoConfig& main_config,
                               const ppo::PpoConfig& reward_config, const ppo::GaeConfig& gae,
                               const HierarchyConfig& hierarchy);

class DualTrainer final : public ppo::Trainer {
 public:
  DualTrainer(std::uint64_t seed, const ppo::PpoConfig& ppo, const ppo::GaeConfig& gae,
              const ppo::Architecture& main_arch, const HierarchyConfig& hierarchy);

  ppo::IterationResult iterate() override;
  [[nodiscard]] std::int64_t env_steps() const override { return env_steps_; }
  [[nodiscard]] const ppo::Agent& main_agent() const override { return main_; }
  [[nodiscard]] const ppo::Agent* reward_agent() const override;
  [[nodiscard]] const RewardAgent& hierarchy_agent() const { return reward_; }

 private:
  ppo::PpoConfig ppo_;
  ppo::GaeConfig gae_;
  HierarchyConfig hierarchy_;
  ppo::Agent main_;
  RewardAgent reward_;
  std::vector<ppo::RolloutWorker> workers_;
  std::mt19937_64 main_sampling_rng_;
  std::mt19937_64 reward_sampling_rng_;
  std::mt19937_64 main_shuffle_rng_;
  std::mt19937_64 reward_shuffle_rng_;
  RunningStd shaped_scale_;
  std::int64_t env_steps_ = 0;
};

}  // namespace hrl::hierarchy
