#include "hrl/ppo/update.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hrl/errors.hpp"
#include "hrl/nn/gaussian.hpp"
#include "hrl/ppo/gae.hpp"
#include "hrl/ppo/loss.hpp"

namespace hrl::ppo {

void PpoConfig::validate(int episode_length) const {
  if (!(clip_epsilon > 0.0)) {
    throw ConfigurationError("clip_epsilon must be positive");
  }
  if (!(learning_rate >= 0.0)) {
    throw ConfigurationError("learning_rate must be non-negative");
  }
  if (num_actors < 1 || horizon < 1 || minibatch_size < 1 || epochs < 0) {
    throw ConfigurationError("num_actors, horizon and minibatch_size must be positive");
  }
  if (minibatch_size > batch_size()) {
    throw ConfigurationError("minibatch_size must not exceed num_actors * horizon");
  }
  if (horizon >= episode_length) {
    throw ConfigurationError("horizon must be shorter than an episode");
  }
  if (!(max_grad_norm > 0.0)) {
    throw ConfigurationError("max_grad_norm must be positive");
  }
}

Agent Agent::create(nn::NetworkParameters actor, nn::NetworkParameters critic) {
  Agent agent;
  agent.actor_optimizer = nn::AdamState::for_parameters(actor);
  agent.critic_optimizer = nn::AdamState::for_parameters(critic);
  agent.actor = std::move(actor);
  agent.critic = std::move(critic);
  return agent;
}

void UpdateBatch::validate(const Agent& agent) const {
  const Eigen::Index n = size();
  if (observations.cols() != n || actions.cols() != n || advantages.size() != n ||
      value_targets.size() != n) {
    throw ConfigurationError("update batch members differ in length");
  }
  if (observations.rows() != agent.actor.input_width() ||
      actions.rows() != agent.actor.output_width() ||
      actions.rows() != agent.actor.log_std.size()) {
    throw ConfigurationError("update batch does not match the agent's shapes");
  }
}

MinibatchEvaluation evaluate_minibatch(const Agent& agent, const UpdateBatch& batch,
                                       std::span<const Eigen::Index> indices,
                                       const PpoConfig& config) {
  const auto count = static_cast<Eigen::Index>(indices.size());
  if (count == 0) {
    throw ConfigurationError("empty minibatch");
  }
  const double inv_count = 1.0 / static_cast<double>(count);

  Eigen::MatrixXd obs(batch.observations.rows(), count);
  Eigen::MatrixXd actions(batch.actions.rows(), count);
  Eigen::VectorXd old_log_probs(count);
  Eigen::VectorXd advantages(count);
  Eigen::VectorXd targets(count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const Eigen::Index src = indices[static_cast<std::size_t>(j)];
    obs.col(j) = batch.observations.col(src);
    actions.col(j) = batch.actions.col(src);
    old_log_probs[j] = batch.log_probs[src];
    advantages[j] = batch.advantages[src];
    targets[j] = batch.value_targets[src];
  }
  if (config.normalize_advantages && count > 1) {
    advantages = normalize_advantages(advantages);
  }

  MinibatchEvaluation eval;
  const auto& log_std = agent.actor.log_std;

  // Policy surrogate.
  nn::ForwardResult policy = nn::forward(agent.actor, obs);
  const Eigen::VectorXd log_probs = nn::gaussian_log_prob(policy.output, log_std, actions);
  Eigen::RowVectorXd d_loss_d_logp(count);
  double surrogate_sum = 0.0;
  double kl_sum = 0.0;
  int clipped = 0;
  for (Eigen::Index j = 0; j < count; ++j) {
    const double log_ratio = log_probs[j] - old_log_probs[j];
    const double ratio = std::exp(log_ratio);
    surrogate_sum += clipped_surrogate(ratio, advantages[j], config.clip_epsilon);
    d_loss_d_logp[j] =
        -clipped_surrogate_slope(ratio, advantages[j], config.clip_epsilon) * ratio * inv_count;
    kl_sum += (ratio - 1.0) - log_ratio;
    if (std::abs(ratio - 1.0) > config.clip_epsilon) {
      ++clipped;
    }
  }
  eval.surrogate = surrogate_sum * inv_count;
  eval.approx_kl = kl_sum * inv_count;
  eval.clip_fraction = static_cast<double>(clipped) * inv_count;
  eval.entropy = nn::gaussian_entropy(log_std);

  const nn::LogProbGradient lp = nn::gaussian_log_prob_gradient(policy.output, log_std, actions);
  const Eigen::MatrixXd mean_grad = lp.d_mean.array().rowwise() * d_loss_d_logp.array();
  eval.actor_gradient = nn::backward(agent.actor, policy.tape, mean_grad);
  eval.actor_gradient.log_std = lp.d_log_std * d_loss_d_logp.transpose();
  // d(-c2 * entropy) / d(log_std) = -c2 for every dimension.
  eval.actor_gradient.log_std.array() -= config.c2;

  // Value regression.
  nn::ForwardResult value = nn::forward(agent.critic, obs);
  const Eigen::RowVectorXd diff = value.output.row(0) - targets.transpose();
  eval.value_mse = diff.squaredNorm() * inv_count;
  const Eigen::MatrixXd value_grad = (2.0 * config.c1 * inv_count) * diff;
  eval.critic_gradient = nn::backward(agent.critic, value.tape, value_grad);

  eval.objective = combined_loss(eval.surrogate, eval.value_mse, eval.entropy, config.c1, config.c2);
  return eval;
}

double clip_gradient_norm(nn::ParameterGradients& grad, double max_norm) {
  const double norm = grad.norm();
  if (norm > max_norm) {
    grad *= max_norm / (norm + 1e-6);
  }
  return norm;
}

UpdateStats ppo_update(Agent& agent, const UpdateBatch& batch, const PpoConfig& config,
                       std::mt19937_64& rng) {
  batch.validate(agent);
  UpdateStats stats;
  const Eigen::Index n = batch.size();
  if (n == 0 || config.epochs == 0) {
    return stats;
  }
  const auto minibatch = static_cast<Eigen::Index>(std::min<Eigen::Index>(config.minibatch_size, n));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index start = 0; start < n; start += minibatch) {
      const Eigen::Index stop = std::min(n, start + minibatch);
      const std::span<const Eigen::Index> indices(order.data() + start,
                                                  static_cast<std::size_t>(stop - start));
      MinibatchEvaluation eval = evaluate_minibatch(agent, batch, indices, config);
      if (!std::isfinite(eval.objective) || !eval.actor_gradient.all_finite() ||
          !eval.critic_gradient.all_finite()) {
        std::ostringstream msg;
        msg << "epoch " << epoch << " minibatch at " << start
            << ": non-finite loss or gradient, minibatch skipped";
        stats.diagnostics.push_back(msg.str());
        ++stats.skipped_minibatches;
        continue;
      }
      clip_gradient_norm(eval.actor_gradient, config.max_grad_norm);
      clip_gradient_norm(eval.critic_gradient, config.max_grad_norm);
      nn::adam_step(agent.actor, eval.actor_gradient, agent.actor_optimizer, config.learning_rate);
      nn::adam_step(agent.critic, eval.critic_gradient, agent.critic_optimizer,
                    config.learning_rate);

      ++stats.minibatches;
      stats.surrogate += eval.surrogate;
      stats.value_loss += eval.value_mse;
      stats.entropy += eval.entropy;
      stats.clip_fraction += eval.clip_fraction;
      stats.approx_kl += eval.approx_kl;
    }
  }
  if (stats.minibatches > 0) {
    const double inv = 1.0 / stats.minibatches;
    stats.surrogate *= inv;
    stats.value_loss *= inv;
    stats.entropy *= inv;
    stats.clip_fraction *= inv;
    stats.approx_kl *= inv;
  }
  return stats;
}

}  // namespace hrl::ppo
