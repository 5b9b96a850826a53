#pragma once

namespace hrl::ppo {

struct GaeConfig {
  double gamma = 0.95;  // discount, (0, 1]
  double lam = 0.95;    // GAE lambda, [0, 1]

  void validate() const;
};

struct PpoConfig {
  double clip_epsilon = 0.2;
  double c1 = 0.5;   // value-loss coefficient
  double c2 = 0.01;  // entropy coefficient
  double learning_rate = 3e-4;
  int num_actors = 4;       // N
  int horizon = 128;        // T, steps per actor per rollout
  int minibatch_size = 64;  // m <= N * T
  int epochs = 10;          // K
  double max_grad_norm = 0.5;
  bool normalize_advantages = true;

  [[nodiscard]] int batch_size() const { return num_actors * horizon; }

  /// Throws ConfigurationError unless m <= N*T and T < episode_length.
  void validate(int episode_length) const;
};

}  // namespace hrl::ppo
