#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace hrl::env {

/// Pendulum-v1 constants.
struct PendulumPhysics {
  static constexpr double gravity = 10.0;
  static constexpr double mass = 1.0;
  static constexpr double length = 1.0;
  static constexpr double dt = 0.05;
  static constexpr double max_speed = 8.0;
  static constexpr double max_torque = 2.0;
  static constexpr int episode_steps = 200;
  /// Largest possible per-step cost: pi^2 + 0.1 * 8^2 + 0.001 * 2^2.
  static constexpr double max_cost = 16.2736044010893586;
};

struct PendulumState {
  double theta = 0.0;      // radians, kept in [-pi, pi)
  double theta_dot = 0.0;  // radians / second
  int steps_elapsed = 0;
};

struct Observation {
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  double theta_dot = 0.0;

  static constexpr int width = 3;
  [[nodiscard]] Eigen::Vector3d to_vector() const { return {cos_theta, sin_theta, theta_dot}; }
};

struct StepResult {
  Observation observation;
  double reward = 0.0;  // global reward R, always in [-max_cost, 0]
  bool done = false;
};

/// Wraps an angle into [-pi, pi).
double angle_normalize(double x);

Observation observe(const PendulumState& state);

/// Uniform theta in [-pi, pi], theta_dot in [-1, 1].
PendulumState reset(std::mt19937_64& rng);
PendulumState reset(std::uint64_t seed);

/// Advances one step of dt. The torque is clipped to [-2, 2]; the reward is computed from the
/// pre-integration state. Throws InputError on a non-finite torque.
std::pair<PendulumState, StepResult> step(const PendulumState& state, double torque);

/// Stateful wrapper owning its own reset stream.
class PendulumEnv {
 public:
  explicit PendulumEnv(std::mt19937_64 rng) : rng_(std::move(rng)) {}

  Observation reset();
  StepResult step(double torque);

  [[nodiscard]] const PendulumState& state() const { return state_; }

 private:
  std::mt19937_64 rng_;
  PendulumState state_;
};

}  // namespace hrl::env
