#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hrl/errors.hpp"
#include "hrl/hierarchy/compose.hpp"
#include "hrl/hierarchy/dual_trainer.hpp"
#include "hrl/hierarchy/reward_agent.hpp"
#include "hrl/nn/gaussian.hpp"
#include "hrl/ppo/trainer.hpp"
#include "hrl/random.hpp"
#include "oracles.hpp"
#include "property_checks.hpp"

using namespace hrl;
using hierarchy::compose;

TEST(Compose, Examples) {
  EXPECT_EQ(compose(2.0, std::vector<double>{0.5}), 3.0);
  EXPECT_EQ(compose(1.0, std::vector<double>{1.0, 1.0, 1.0}), 4.0);
  EXPECT_EQ(compose(-1.0, std::vector<double>{0.5, 0.5, 0.5}), -1.875);
  EXPECT_EQ(compose(-7.25, std::vector<double>{}), -7.25);
  EXPECT_EQ(hierarchy::compose_oracle(-7.25, std::vector<double>{}), -7.25);
  EXPECT_EQ(hierarchy::compose_oracle(3.0, std::vector<double>{0.25}), 3.0 + 3.0 * 0.25);
}

TEST(Compose, ZeroSignalsRecoverGlobalRewardExactly) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-16.3, 0.0);
  for (int k = 0; k < 1000; ++k) {
    const double R = u(rng);
    for (std::size_t n = 0; n <= 6; ++n) {
      EXPECT_EQ(compose(R, std::vector<double>(n, 0.0)), R);
    }
  }
}

TEST(Compose, ClosedForms) {
  const auto e = checks::compose_closed_forms(10000, 42);
  EXPECT_LE(e.depth1, 1e-12);
  EXPECT_LE(e.depth3, 1e-12);
}

TEST(Compose, OracleIdentity) { EXPECT_LE(checks::compose_vs_oracle(10000, 43), 1e-12); }

TEST(HierarchyProperty, SignOrderMagnitude) {
  const auto v = checks::hierarchy_properties(20000, 44);
  EXPECT_EQ(v.sign, 0);
  EXPECT_EQ(v.order, 0);
  EXPECT_EQ(v.magnitude, 0);
}

TEST(Squash, Ranges) {
  for (const double raw : {-800.0, -30.0, -1.0, 0.0, 0.3, 30.0, 800.0}) {
    const double s = hierarchy::squash(hierarchy::Squash::Sigmoid01, raw);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
    EXPECT_TRUE(std::isfinite(s));
    EXPECT_LE(std::abs(hierarchy::squash(hierarchy::Squash::Tanh11, raw)), 1.0);
    EXPECT_LE(std::abs(hierarchy::squash(hierarchy::Squash::LinearClip, raw)), 1.0);
  }
  EXPECT_EQ(hierarchy::squash(hierarchy::Squash::Sigmoid01, 0.0), 0.5);
  EXPECT_EQ(hierarchy::squash(hierarchy::Squash::LinearClip, 0.4), 0.4);
  EXPECT_EQ(hierarchy::parse_squash("tanh11"), hierarchy::Squash::Tanh11);
  EXPECT_THROW(hierarchy::parse_squash("relu"), ConfigurationError);
}

namespace {

hierarchy::RewardAgent reward_agent(int depth, std::uint64_t seed) {
  hierarchy::HierarchyConfig cfg;
  cfg.depth = depth;
  cfg.architecture = {2, 16};
  auto rng = make_stream(seed, Stream::RewardInit);
  return hierarchy::make_reward_agent(cfg, rng);
}

}  // namespace

TEST(EmitSignals, SigmoidRangeAndDeterminism) {
  const auto agent = reward_agent(3, 5);
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  std::mt19937_64 obs_rng(2);
  for (int k = 0; k < 500; ++k) {
    const Eigen::VectorXd obs = env::observe(env::reset(obs_rng)).to_vector();
    const auto sa = hierarchy::emit_signals(agent, obs, a, true);
    const auto sb = hierarchy::emit_signals(agent, obs, b, true);
    ASSERT_EQ(sa.signals.size(), 3);
    EXPECT_EQ(sa.signals, sb.signals);
    EXPECT_EQ(sa.log_prob, sb.log_prob);
    for (Eigen::Index i = 0; i < 3; ++i) {
      EXPECT_GT(sa.signals[i], 0.0);
      EXPECT_LT(sa.signals[i], 1.0);
    }
    EXPECT_NEAR(sa.log_prob,
                nn::gaussian_log_prob(nn::predict(agent.agent.actor, obs), agent.agent.actor.log_std,
                                      sa.raw_action),
                1e-12);
  }
}

TEST(EmitSignals, VeryNegativeMeanRecoversGlobalReward) {
  auto agent = reward_agent(3, 6);
  for (auto& layer : agent.agent.actor.layers) layer.weight.setZero();
  agent.agent.actor.layers.back().bias.setConstant(-60.0);
  agent.agent.actor.log_std.setConstant(nn::kLogStdMin);
  std::mt19937_64 rng(1);
  const auto s = hierarchy::emit_signals(agent, Eigen::Vector3d(1.0, 0.0, 0.0), rng, true);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_LT(s.signals[i], 1e-25);
  EXPECT_NEAR(compose(-4.0, s.signals), -4.0, 1e-20);
}

TEST(EmitSignals, DepthZeroDrawsNothing) {
  const auto agent = reward_agent(0, 7);
  std::mt19937_64 rng(1);
  std::mt19937_64 untouched(1);
  const auto s = hierarchy::emit_signals(agent, Eigen::Vector3d(1.0, 0.0, 0.0), rng, true);
  EXPECT_EQ(s.signals.size(), 0);
  EXPECT_EQ(rng(), untouched());
}

TEST(EmitSignals, DeterministicModeUsesMean) {
  const auto agent = reward_agent(2, 8);
  std::mt19937_64 rng(1);
  const Eigen::VectorXd obs = Eigen::Vector3d(0.6, 0.8, -0.5);
  const auto s = hierarchy::emit_signals(agent, obs, rng, false);
  EXPECT_EQ(s.raw_action, nn::predict(agent.agent.actor, obs));
}

// Frozen reward agent with constant signals c: r = h(1) * R with h(1) >= 1, so the per-step
// ordering of rewards is preserved.
TEST(DualStep, FrozenSignalsAreMonotoneInGlobalReward) {
  auto agent = reward_agent(3, 9);
  for (auto& layer : agent.agent.actor.layers) layer.weight.setZero();
  agent.agent.actor.layers.back().bias << 0.3, -1.2, 2.0;
  std::mt19937_64 rng(1);
  hierarchy::HierarchicalReward provider(agent, rng, false);
  std::vector<double> c;
  for (const double raw : {0.3, -1.2, 2.0}) {
    c.push_back(hierarchy::squash(hierarchy::Squash::Sigmoid01, raw));
  }
  const double h1 = compose(1.0, c);
  EXPECT_GE(h1, 1.0);

  std::mt19937_64 main_rng(3);
  auto main = ppo::make_main_agent({2, 8}, 1, main_rng);
  auto workers = ppo::make_workers(3, 2);
  auto sample_rng = make_stream(3, Stream::MainSampling);
  const auto traj =
      ppo::collect_rollout(workers, main.actor, main.critic, provider, 64, sample_rng, 0);
  for (Eigen::Index i = 0; i < traj.size(); ++i) {
    EXPECT_NEAR(traj.shaped_rewards[i], h1 * traj.global_rewards[i], 1e-12);
    for (Eigen::Index j = 0; j < traj.size(); ++j) {
      if (traj.global_rewards[i] < traj.global_rewards[j]) {
        ASSERT_LT(traj.shaped_rewards[i], traj.shaped_rewards[j]);
      }
    }
  }
}

TEST(DualStep, DepthZeroMatchesBaseline) {
  ppo::PpoConfig cfg;
  cfg.num_actors = 2;
  cfg.horizon = 100;
  cfg.minibatch_size = 50;
  hierarchy::HierarchyConfig hier;
  hier.depth = 0;
  const ppo::Architecture arch{2, 16};
  ppo::BaselineTrainer baseline(13, cfg, {}, arch);
  hierarchy::DualTrainer dual(13, cfg, {}, arch, hier);
  EXPECT_EQ(dual.reward_agent(), nullptr);
  for (int k = 0; k < 5; ++k) {
    const auto rb = baseline.iterate();
    const auto rd = dual.iterate();
    EXPECT_FALSE(rd.reward_stats.has_value());
    ASSERT_EQ(rb.episodes.size(), rd.episodes.size());
    for (std::size_t e = 0; e < rb.episodes.size(); ++e) {
      EXPECT_EQ(rb.episodes[e].return_global, rd.episodes[e].return_global);
      EXPECT_EQ(rd.episodes[e].return_shaped, rd.episodes[e].return_global);
    }
    EXPECT_EQ(rb.main_stats.surrogate, rd.main_stats.surrogate);
  }
  EXPECT_TRUE(baseline.main_agent().actor == dual.main_agent().actor);
  EXPECT_TRUE(baseline.main_agent().critic == dual.main_agent().critic);
}

TEST(DualStep, DeterministicAndTrainsBothAgents) {
  ppo::PpoConfig cfg;
  cfg.num_actors = 2;
  cfg.horizon = 100;
  hierarchy::HierarchyConfig hier;
  hier.architecture = {2, 16};
  const ppo::Architecture arch{2, 16};
  hierarchy::DualTrainer a(17, cfg, {}, arch, hier);
  hierarchy::DualTrainer b(17, cfg, {}, arch, hier);
  const auto initial_reward_actor = a.hierarchy_agent().agent.actor;
  for (int k = 0; k < 3; ++k) {
    const auto ra = a.iterate();
    const auto rb = b.iterate();
    ASSERT_TRUE(ra.reward_stats.has_value());
    EXPECT_EQ(ra.main_stats.surrogate, rb.main_stats.surrogate);
    EXPECT_EQ(ra.reward_stats->surrogate, rb.reward_stats->surrogate);
    EXPECT_EQ(ra.main_stats.value_loss, rb.main_stats.value_loss);
  }
  EXPECT_TRUE(a.main_agent().actor == b.main_agent().actor);
  EXPECT_TRUE(a.hierarchy_agent().agent.actor == b.hierarchy_agent().agent.actor);
  EXPECT_FALSE(a.hierarchy_agent().agent.actor == initial_reward_actor);
  ASSERT_NE(a.reward_agent(), nullptr);
  EXPECT_EQ(a.hierarchy_agent().depth(), 3);
}

TEST(RunningStdTest, MatchesPopulationStd) {
  hierarchy::RunningStd s;
  EXPECT_EQ(s.std_dev(), 1.0);
  Eigen::VectorXd a(3), b(2);
  a << 1.0, 2.0, 4.0;
  b << -3.0, 0.5;
  s.update(a);
  s.update(b);
  const std::vector<double> all{1.0, 2.0, 4.0, -3.0, 0.5};
  double mean = 0.0;
  for (const double x : all) mean += x / 5.0;
  double var = 0.0;
  for (const double x : all) var += (x - mean) * (x - mean) / 5.0;
  EXPECT_NEAR(s.std_dev(), std::sqrt(var), 1e-12);
  EXPECT_EQ(s.count(), 5);
}
