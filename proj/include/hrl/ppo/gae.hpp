#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "hrl/ppo/config.hpp"

namespace hrl::ppo {

struct AdvantageBatch {
  Eigen::VectorXd advantages;
  Eigen::VectorXd value_targets;  // advantages + V(s_t)
};

/// Truncated generalized advantage estimation over a flat batch of steps.
///
///   delta_t = r_t + gamma * V(s_{t+1}) - V(s_t)
///   A_t     = delta_t + gamma * lam * A_{t+1}
///
/// `next_values[t]` is the value of the observation that actually followed step t (before any
/// reset), so episode ends caused by the time limit still bootstrap. `boundaries[t] != 0`
/// stops the recursion after step t: the end of an episode or of an actor's segment.
AdvantageBatch compute_gae(std::span<const double> rewards, std::span<const double> values,
                           std::span<const double> next_values,
                           std::span<const std::uint8_t> boundaries, const GaeConfig& config);

/// Single unbroken segment; `values` carries one extra trailing bootstrap entry V(s_T).
AdvantageBatch compute_gae(std::span<const double> rewards, std::span<const double> values,
                           const GaeConfig& config);

/// (a - mean) / (std + 1e-8) with the population standard deviation.
Eigen::VectorXd normalize_advantages(const Eigen::VectorXd& advantages);

}  // namespace hrl::ppo
