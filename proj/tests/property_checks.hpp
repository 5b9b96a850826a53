// Randomized checks shared by the unit tests and the acceptance driver. Each returns the worst
// error or the number of violations so callers can apply their own thresholds.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "hrl/env/pendulum.hpp"
#include "hrl/graph/reward_tree.hpp"
#include "hrl/hierarchy/compose.hpp"
#include "hrl/ppo/gae.hpp"
#include "oracles.hpp"

namespace checks {

struct ComposeErrors {
  double depth1 = 0.0;
  double depth3 = 0.0;
};

// compose against the written-out one- and three-level formulas.
inline ComposeErrors compose_closed_forms(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> reward(-16.3, 0.0);
  std::uniform_real_distribution<double> signal(-1.0, 1.0);
  ComposeErrors e;
  for (int k = 0; k < cases; ++k) {
    const double R = reward(rng);
    const std::vector<double> s{signal(rng), signal(rng), signal(rng)};
    e.depth1 = std::max(e.depth1, std::abs(hrl::hierarchy::compose(R, std::span(s).first(1)) -
                                           oracle::compose1(R, s[0])));
    e.depth3 = std::max(e.depth3, std::abs(hrl::hierarchy::compose(R, s) -
                                           oracle::compose3(R, s[0], s[1], s[2])));
  }
  return e;
}

// compose against the library's prefix-product oracle over depths 0..6.
inline double compose_vs_oracle(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> reward(-20.0, 20.0);
  std::uniform_real_distribution<double> signal(-1.5, 1.5);
  std::uniform_int_distribution<int> depth(0, 6);
  double worst = 0.0;
  for (int k = 0; k < cases; ++k) {
    const double R = reward(rng);
    std::vector<double> s(static_cast<std::size_t>(depth(rng)));
    for (auto& x : s) x = signal(rng);
    worst = std::max(worst, std::abs(hrl::hierarchy::compose(R, s) -
                                     hrl::hierarchy::compose_oracle(R, s)));
  }
  return worst;
}

inline double gae_vs_direct_sum(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 16);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = len(rng);
    std::vector<double> rewards(static_cast<std::size_t>(n));
    std::vector<double> values(static_cast<std::size_t>(n + 1));
    for (auto& r : rewards) r = u(rng);
    for (auto& v : values) v = u(rng);
    const hrl::ppo::GaeConfig cfg{1.0 - unit(rng), unit(rng)};
    const auto expected = oracle::gae_direct(rewards, values, cfg.gamma, cfg.lam);
    const auto out = hrl::ppo::compute_gae(rewards, values, cfg);
    for (int t = 0; t < n; ++t) {
      worst = std::max(worst, std::abs(out.advantages[t] - expected[static_cast<std::size_t>(t)]));
    }
  }
  return worst;
}

struct ChainResult {
  double max_error = 0.0;
  int bad_traces = 0;
};

// Chain trees of depth 0..6 against compose, plus their single root-to-leaf trace.
inline ChainResult chain_consistency(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> reward(-16.3, 0.0);
  std::uniform_real_distribution<double> signal(-1.0, 1.0);
  std::uniform_int_distribution<int> depth(0, 6);
  ChainResult out;
  for (int k = 0; k < cases; ++k) {
    const double R = reward(rng);
    std::vector<double> s(static_cast<std::size_t>(depth(rng)));
    for (auto& x : s) x = signal(rng);
    const auto tree = hrl::graph::RewardTree::chain(R, s);
    out.max_error = std::max(out.max_error,
                             std::abs(hrl::graph::evaluate(tree) - hrl::hierarchy::compose(R, s)));
    std::vector<double> expected{R};
    expected.insert(expected.end(), s.begin(), s.end());
    const auto traces = hrl::graph::leaf_traces(tree);
    if (traces.size() != 1 || traces[0] != expected) ++out.bad_traces;
  }
  return out;
}

struct HierarchyViolations {
  int sign = 0;
  int order = 0;
  int magnitude = 0;
};

// Sign preservation, order preservation and |compose| <= (n+1)|R| with sigmoid signals.
inline HierarchyViolations hierarchy_properties(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> reward(-50.0, 50.0);
  std::normal_distribution<double> raw(0.0, 4.0);
  std::uniform_int_distribution<int> depth(0, 6);
  HierarchyViolations v;
  for (int k = 0; k < cases; ++k) {
    const int n = depth(rng);
    std::vector<double> s(static_cast<std::size_t>(n));
    for (auto& x : s) x = hrl::hierarchy::squash(hrl::hierarchy::Squash::Sigmoid01, raw(rng));
    double a = reward(rng);
    double b = reward(rng);
    if (a == 0.0 || b == 0.0 || a == b) continue;
    if (a > b) std::swap(a, b);
    const double ra = hrl::hierarchy::compose(a, s);
    const double rb = hrl::hierarchy::compose(b, s);
    if ((ra > 0.0) != (a > 0.0) || ra == 0.0) ++v.sign;
    if (!(ra < rb)) ++v.order;
    if (std::abs(ra) > (n + 1) * std::abs(a) || std::abs(rb) > (n + 1) * std::abs(b)) {
      ++v.magnitude;
    }
  }
  return v;
}

struct PendulumViolations {
  int reward_bound = 0;
  int episode_length = 0;
  int speed = 0;
};

inline PendulumViolations pendulum_properties(int episodes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> torque(-5.0, 5.0);
  PendulumViolations v;
  for (int e = 0; e < episodes; ++e) {
    hrl::env::PendulumEnv pendulum(std::mt19937_64(seed * 1000 + static_cast<std::uint64_t>(e)));
    pendulum.reset();
    int steps = 0;
    bool done = false;
    while (!done && steps < 1000) {
      const auto result = pendulum.step(torque(rng));
      ++steps;
      done = result.done;
      if (result.reward > 0.0 || result.reward < -hrl::env::PendulumPhysics::max_cost) {
        ++v.reward_bound;
      }
      if (std::abs(pendulum.state().theta_dot) > hrl::env::PendulumPhysics::max_speed) ++v.speed;
    }
    if (steps != hrl::env::PendulumPhysics::episode_steps) ++v.episode_length;
  }
  return v;
}

}  // namespace checks
