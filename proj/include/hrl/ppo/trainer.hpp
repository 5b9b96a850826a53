#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hrl/ppo/config.hpp"
#include "hrl/ppo/gae.hpp"
#include "hrl/ppo/rollout.hpp"
#include "hrl/ppo/update.hpp"

namespace hrl::ppo {

/// Hidden stack of a dense network: `hidden_layers` tanh layers of `hidden_width` units.
struct Architecture {
  int hidden_layers = 3;
  int hidden_width = 64;
};

/// Gaussian actor (policy-output gain 0.01, log_std 0) and value critic for the pendulum.
Agent make_main_agent(const Architecture& arch, int action_width, std::mt19937_64& rng);

/// GAE of the vanilla learner: advantages and critic targets both from global_rewards.
AdvantageBatch baseline_advantages(const Trajectory& trajectory, const GaeConfig& gae);

struct IterationResult {
  std::vector<EpisodeSummary> episodes;
  UpdateStats main_stats;
  std::optional<UpdateStats> reward_stats;
};

/// Common surface of the baseline and hierarchical learners: one call = one rollout of N*T
/// steps followed by the PPO update(s).
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual IterationResult iterate() = 0;
  [[nodiscard]] virtual std::int64_t env_steps() const = 0;
  [[nodiscard]] virtual const Agent& main_agent() const = 0;
  [[nodiscard]] virtual const Agent* reward_agent() const { return nullptr; }
};

/// Vanilla PPO: the main agent learns from the global reward.
class BaselineTrainer final : public Trainer {
 public:
  BaselineTrainer(std::uint64_t seed, const PpoConfig& ppo, const GaeConfig& gae,
                  const Architecture& arch);

  IterationResult iterate() override;
  [[nodiscard]] std::int64_t env_steps() const override { return env_steps_; }
  [[nodiscard]] const Agent& main_agent() const override { return agent_; }

 private:
  PpoConfig ppo_;
  GaeConfig gae_;
  Agent agent_;
  std::vector<RolloutWorker> workers_;
  std::mt19937_64 sampling_rng_;
  std::mt19937_64 shuffle_rng_;
  PassThroughReward provider_;
  std::int64_t env_steps_ = 0;
};

}  // namespace hrl::ppo
