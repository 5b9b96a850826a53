#include "hrl/ppo/gae.hpp"

#include <cmath>
#include <vector>

#include "hrl/errors.hpp"

namespace hrl::ppo {

void GaeConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ConfigurationError("gamma must lie in (0, 1]");
  }
  if (!(lam >= 0.0 && lam <= 1.0)) {
    throw ConfigurationError("lambda must lie in [0, 1]");
  }
}

AdvantageBatch compute_gae(std::span<const double> rewards, std::span<const double> values,
                           std::span<const double> next_values,
                           std::span<const std::uint8_t> boundaries, const GaeConfig& config) {
  config.validate();
  const std::size_t n = rewards.size();
  if (values.size() != n || next_values.size() != n || boundaries.size() != n) {
    throw ConfigurationError("gae: rewards, values, next_values and boundaries differ in length");
  }
  AdvantageBatch out;
  out.advantages.resize(static_cast<Eigen::Index>(n));
  out.value_targets.resize(static_cast<Eigen::Index>(n));
  const double decay = config.gamma * config.lam;
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    if (boundaries[i] != 0) {
      running = 0.0;
    }
    const double delta = rewards[i] + config.gamma * next_values[i] - values[i];
    running = delta + decay * running;
    const auto idx = static_cast<Eigen::Index>(i);
    out.advantages[idx] = running;
    out.value_targets[idx] = running + values[i];
  }
  return out;
}

AdvantageBatch compute_gae(std::span<const double> rewards, std::span<const double> values,
                           const GaeConfig& config) {
  if (values.size() != rewards.size() + 1) {
    throw ConfigurationError("gae: a segment needs exactly one bootstrap value past the rewards");
  }
  const std::size_t n = rewards.size();
  std::vector<std::uint8_t> boundaries(n, 0);
  if (n > 0) {
    boundaries.back() = 1;
  }
  return compute_gae(rewards, values.first(n), values.subspan(1), boundaries, config);
}

Eigen::VectorXd normalize_advantages(const Eigen::VectorXd& advantages) {
  if (advantages.size() == 0) {
    return advantages;
  }
  const double mean = advantages.mean();
  const Eigen::ArrayXd centered = advantages.array() - mean;
  const double std_dev = std::sqrt(centered.square().mean());
  return (centered / (std_dev + 1e-8)).matrix();
}

}  // namespace hrl::ppo
