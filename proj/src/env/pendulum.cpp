#include "hrl/env/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hrl/errors.hpp"

namespace hrl::env {

using std::numbers::pi;

double angle_normalize(double x) {
  double wrapped = std::fmod(x + pi, 2.0 * pi);
  if (wrapped < 0.0) {
    wrapped += 2.0 * pi;
  }
  double result = wrapped - pi;
  // fmod can land a hair below 2*pi after the correction above.
  if (result >= pi) {
    result -= 2.0 * pi;
  }
  return result;
}

Observation observe(const PendulumState& state) {
  return {std::cos(state.theta), std::sin(state.theta), state.theta_dot};
}

PendulumState reset(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::uniform_real_distribution<double> speed(-1.0, 1.0);
  PendulumState state;
  state.theta = angle(rng);
  state.theta_dot = speed(rng);
  state.steps_elapsed = 0;
  return state;
}

PendulumState reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return reset(rng);
}

std::pair<PendulumState, StepResult> step(const PendulumState& state, double torque) {
  using P = PendulumPhysics;
  if (!std::isfinite(torque)) {
    throw InputError("pendulum: non-finite torque");
  }
  const double u = std::clamp(torque, -P::max_torque, P::max_torque);
  const double th = angle_normalize(state.theta);
  const double cost = th * th + 0.1 * state.theta_dot * state.theta_dot + 0.001 * u * u;

  const double accel = 3.0 * P::gravity / (2.0 * P::length) * std::sin(state.theta) +
                       3.0 / (P::mass * P::length * P::length) * u;
  PendulumState next;
  next.theta_dot = std::clamp(state.theta_dot + accel * P::dt, -P::max_speed, P::max_speed);
  next.theta = angle_normalize(state.theta + next.theta_dot * P::dt);
  next.steps_elapsed = state.steps_elapsed + 1;

  StepResult result;
  result.observation = observe(next);
  result.reward = -cost;
  result.done = next.steps_elapsed >= P::episode_steps;
  return {next, result};
}

Observation PendulumEnv::reset() {
  state_ = env::reset(rng_);
  return observe(state_);
}

StepResult PendulumEnv::step(double torque) {
  auto [next, result] = env::step(state_, torque);
  state_ = next;
  return result;
}

}  // namespace hrl::env
