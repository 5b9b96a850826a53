#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hrl/nn/adam.hpp"
#include "hrl/nn/network.hpp"
#include "hrl/ppo/config.hpp"

namespace hrl::ppo {

/// An actor-critic pair with its optimizer state. The actor's output is the Gaussian mean and
/// its log_std the state-independent spread.
struct Agent {
  nn::NetworkParameters actor;
  nn::NetworkParameters critic;
  nn::AdamState actor_optimizer;
  nn::AdamState critic_optimizer;

  static Agent create(nn::NetworkParameters actor, nn::NetworkParameters critic);
};

/// What an update consumes. Column/entry i of every member describes the same step.
struct UpdateBatch {
  const Eigen::MatrixXd& observations;
  const Eigen::MatrixXd& actions;
  const Eigen::VectorXd& log_probs;  // behavior policy
  const Eigen::VectorXd& advantages;
  const Eigen::VectorXd& value_targets;

  [[nodiscard]] Eigen::Index size() const { return log_probs.size(); }
  void validate(const Agent& agent) const;
};

/// Loss pieces and gradients of -objective for one minibatch.
struct MinibatchEvaluation {
  double surrogate = 0.0;  // mean clipped surrogate
  double value_mse = 0.0;
  double entropy = 0.0;
  double objective = 0.0;  // surrogate - c1 * value_mse + c2 * entropy
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  nn::ParameterGradients actor_gradient;
  nn::ParameterGradients critic_gradient;
};

MinibatchEvaluation evaluate_minibatch(const Agent& agent, const UpdateBatch& batch,
                                       std::span<const Eigen::Index> indices,
                                       const PpoConfig& config);

struct UpdateStats {
  int minibatches = 0;
  int skipped_minibatches = 0;
  double surrogate = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  std::vector<std::string> diagnostics;
};

/// K epochs over shuffled minibatches of size m, Adam on both networks, per-network gradient
/// norm clipping. A minibatch whose loss or gradients are non-finite is skipped and noted in
/// the diagnostics; the remaining minibatches still run.
UpdateStats ppo_update(Agent& agent, const UpdateBatch& batch, const PpoConfig& config,
                       std::mt19937_64& rng);

/// Rescales `grad` so that its norm is at most `max_norm`. Returns the norm before clipping.
double clip_gradient_norm(nn::ParameterGradients& grad, double max_norm);

}  // namespace hrl::ppo
